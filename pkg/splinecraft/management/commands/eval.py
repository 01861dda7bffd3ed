from ...classic_fit import FitConfig
from ...models import ModelKind
from ...train_eval import evaluate
from ..base import SplinecraftCommand, worker_count
from ..predictor import held_out_records, predictor_arguments, resolve_predictor


class Command(SplinecraftCommand):
    help = 'Evaluate a checkpoint (or the labels, with --oracle) on the held-out split.'

    def add_arguments(self, parser):
        predictor_arguments(parser, [kind.value for kind in ModelKind])
        parser.add_argument('--seed', type=int, default=None,
                            help='Split seed; defaults to the training seed.')
        parser.add_argument('--out', default=None, help='JSON report path.')
        parser.add_argument('--csv', default=None, help='Per-instance table path.')
        parser.add_argument('--no-fits', action='store_true',
                            help='Skip the NN-init and random-init classical fits.')
        parser.add_argument('--restarts', type=int, default=None)
        self.add_workers_argument(parser)

    def run(self, **options):
        predictor, kind, seed, fraction, description = resolve_predictor(options)
        fit_cfg = FitConfig.from_settings(restarts=options['restarts'], seed=seed)
        workers = worker_count(options['workers'])
        self.announce({**description, 'mode': kind.value, 'dataset': options['dataset'],
                       'train_fraction': fraction, 'with_fits': not options['no_fits'],
                       'restarts': fit_cfg.restarts, 'workers': workers}, seed)

        records = held_out_records(options, kind, seed, fraction)
        report, rows = evaluate(predictor, records, kind, fit_cfg, workers,
                                self.show_progress(options), with_fits=not options['no_fits'])
        if options['csv']:
            rows.to_csv(options['csv'], encoding='utf-8', index=False)
        self.emit(report.to_dict(), options['out'])
