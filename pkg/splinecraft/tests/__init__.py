import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'splinecraft.settings')
django.setup()
