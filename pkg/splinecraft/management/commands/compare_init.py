from ...classic_fit import FitConfig
from ...models import ModelKind
from ...train_eval import compare_init
from ..base import SplinecraftCommand, worker_count
from ..predictor import held_out_records, predictor_arguments, resolve_predictor


class Command(SplinecraftCommand):
    help = ('Compare the network prediction, the fit initialised from it and the random '
            'multi-start fit, instance by instance.')

    def add_arguments(self, parser):
        predictor_arguments(parser, [ModelKind.V.value, ModelKind.M.value, ModelKind.MV.value])
        parser.add_argument('--seed', type=int, default=None,
                            help='Split seed; defaults to the training seed.')
        parser.add_argument('--out', default=None, help='JSON summary path.')
        parser.add_argument('--csv', default=None, help='Per-instance table path.')
        parser.add_argument('--restarts', type=int, default=None)
        self.add_workers_argument(parser)

    def run(self, **options):
        predictor, kind, seed, fraction, description = resolve_predictor(options)
        fit_cfg = FitConfig.from_settings(restarts=options['restarts'], seed=seed)
        workers = worker_count(options['workers'])
        self.announce({**description, 'mode': kind.value, 'dataset': options['dataset'],
                       'train_fraction': fraction, 'restarts': fit_cfg.restarts,
                       'workers': workers}, seed)

        records = held_out_records(options, kind, seed, fraction)
        comparison = compare_init(predictor, records, kind, fit_cfg, workers,
                                  self.show_progress(options))
        if options['csv']:
            comparison.to_csv(options['csv'])
        self.emit(comparison.summary(), options['out'])
