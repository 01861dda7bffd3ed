from ..models import ModelKind, load_model
from ..train_eval import NetworkPredictor, OraclePredictor, load_split


def predictor_arguments(parser, modes):
    parser.add_argument('--checkpoint', default=None)
    parser.add_argument('--oracle', action='store_true',
                        help='Evaluate the labels themselves (harness self-test).')
    parser.add_argument('--mode', choices=modes, default=None,
                        help='Model kind; required with --oracle.')
    parser.add_argument('--dataset', required=True)
    parser.add_argument('--limit', type=int, default=None,
                        help='Evaluate only the first N test instances.')


def resolve_predictor(options):
    """(predictor, kind, split seed, train fraction, description) for eval-style commands."""
    if options['oracle']:
        if not options['mode']:
            raise ValueError('--oracle needs --mode.')
        kind = ModelKind(options['mode'])
        seed = 0 if options['seed'] is None else options['seed']
        return OraclePredictor(kind), kind, seed, 0.7, {'predictor': 'oracle'}
    if not options['checkpoint']:
        raise ValueError('Give --checkpoint or --oracle.')
    model, manifest = load_model(options['checkpoint'])
    if options['mode'] and ModelKind(options['mode']) is not model.kind:
        raise ValueError(f'Checkpoint holds a {model.kind.value} model, '
                         f'not {options["mode"]}.')
    train_cfg = manifest['config'].get('train', {})
    seed = options['seed'] if options['seed'] is not None else train_cfg.get('seed', 0)
    fraction = train_cfg.get('train_fraction', 0.7)
    description = {'predictor': 'network', 'checkpoint': options['checkpoint'],
                   'step': manifest['config'].get('step')}
    return NetworkPredictor(model), model.kind, seed, fraction, description


def held_out_records(options, kind, seed, fraction):
    _, test = load_split(options['dataset'], kind, seed, fraction)
    return test[:options['limit']] if options['limit'] else test
