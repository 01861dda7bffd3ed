from ...models import ModelConfig, ModelKind
from ...train_eval import TrainConfig, train
from ..base import SplinecraftCommand

MODES = [kind.value for kind in ModelKind]


class Command(SplinecraftCommand):
    help = 'Train a model on the training part of a dataset split.'

    def add_arguments(self, parser):
        parser.add_argument('--mode', choices=MODES, required=True)
        parser.add_argument('--dataset', required=True)
        parser.add_argument('--checkpoint', required=True)
        parser.add_argument('--loss-log', default=None)
        parser.add_argument('--steps', type=int, default=None, dest='max_steps')
        parser.add_argument('--batch-size', type=int, default=None)
        parser.add_argument('--lr', type=float, default=None)
        parser.add_argument('--weight-decay', type=float, default=None)
        parser.add_argument('--decoupled-decay', action='store_true')
        parser.add_argument('--lam', type=float, default=None)
        parser.add_argument('--lam-curve', type=float, default=None)
        parser.add_argument('--lam-point', type=float, default=None)
        parser.add_argument('--eval-every', type=int, default=None)
        parser.add_argument('--log-every', type=int, default=None)
        parser.add_argument('--feature-dim', type=int, default=None)
        self.add_seed_argument(parser)

    def run(self, **options):
        names = ('max_steps', 'batch_size', 'lr', 'weight_decay', 'lam', 'lam_curve',
                 'lam_point', 'eval_every', 'log_every')
        cfg = TrainConfig.from_settings(
            ModelKind(options['mode']), dataset=options['dataset'],
            checkpoint=options['checkpoint'], loss_log=options['loss_log'],
            decoupled_decay=options['decoupled_decay'], seed=options['seed'],
            **{name: options[name] for name in names})
        model_config = ModelConfig.from_settings(feature_dim=options['feature_dim'],
                                                 seed=cfg.seed)
        self.announce({'train': cfg.to_dict(), 'model': model_config.to_dict()}, cfg.seed)

        result = train(cfg, model_config=model_config, progress=self.show_progress(options))
        for line in result.log:
            self.stdout.write(line)
        self.stdout.write(f'trained {result.steps} steps, checkpoint {cfg.checkpoint}')
