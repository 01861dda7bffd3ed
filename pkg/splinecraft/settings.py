"""
Django settings for the splinecraft project.

Only the pieces of Django that the toolkit uses are configured here: the app
registry (for management commands), logging and the SPLINECRAFT_* tunables
read by the command layer through ``django.conf.settings``.
"""

import os
from pathlib import Path

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

APP_NAME = 'splinecraft'

# No sessions or signed cookies are used; the key only satisfies Django's checks.
SECRET_KEY = os.environ.get('SPLINECRAFT_SECRET_KEY', 'splinecraft-local-only')

DEBUG = os.environ.get('SPLINECRAFT_DEBUG', '') == '1'

ALLOWED_HOSTS = []

INSTALLED_APPS = [
    'splinecraft.apps.AppConfig',
]

DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': BASE_DIR / 'db.sqlite3',
    }
}

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_TZ = True

DEFAULT_AUTO_FIELD = 'django.db.models.AutoField'

# Logging

SPLINECRAFT_LOG_LEVEL = os.environ.get('SPLINECRAFT_LOG_LEVEL', 'INFO')

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'plain': {
            'format': '%(asctime)s %(levelname)s %(name)s %(message)s',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'plain',
        },
    },
    'loggers': {
        'splinecraft': {
            'handlers': ['console'],
            'level': SPLINECRAFT_LOG_LEVEL,
            'propagate': False,
        },
    },
}

# Worker pools (generation, evaluation) never exceed this many threads.
SPLINECRAFT_THREADS = max(1, int(os.environ.get('SPLINECRAFT_THREADS') or os.cpu_count() or 1))

SPLINECRAFT_SAMPLING = {
    'svg_samples': 200,
    'revolution_grid': (32, 64),
    'extrusion_grid': (32, 32),
    'cloud_size': 1024,
    'image_size': 128,
}

SPLINECRAFT_GENERATION = {
    'margin': 0.05,
    'min_point_separation': 0.08,
    'max_rejections': 1000,
    'count': 20000,
}

SPLINECRAFT_FIT = {
    'max_iters': 200,
    'rel_tol': 1e-7,
    'n_dense': 1000,
    'regularizer': 1e-8,
    'restarts': 10,
    'max_halvings': 10,
}

SPLINECRAFT_MODEL = {
    'feature_dim': 128,
    'conv_channels': (16, 32, 64, 64),
    'point_mlp': (64, 128, 256),
    'head_hidden': 64,
    'attention_hidden': 64,
    'recon_hidden': 128,
}

SPLINECRAFT_TRAINING = {
    'batch_size': 32,
    'lr': 1e-4,
    'weight_decay': 1e-4,
    'lam': 0.1,
    'lam_curve': 0.1,
    'lam_point': 0.1,
    'max_steps': 20000,
    'eval_every': 1000,
    'log_every': 100,
    'train_fraction': 0.7,
}
