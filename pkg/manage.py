#!/usr/bin/env python
"""Splinecraft command-line utility (dataset generation, training, fitting)."""
import os
import sys


def main(argv=None):
    """Run splinecraft commands."""
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'splinecraft.settings')
    try:
        from django.core.management import execute_from_command_line
    except ImportError as exc:
        raise ImportError(
            "Couldn't import Django. Are you sure it's installed and "
            "available on your PYTHONPATH environment variable? Did you "
            "forget to activate a virtual environment?"
        ) from exc
    execute_from_command_line(argv or sys.argv)


if __name__ == '__main__':
    main()
