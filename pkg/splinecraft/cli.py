import os
import sys


def main(argv=None):
    """Console-script entry point; same dispatcher as ``manage.py``."""
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'splinecraft.settings')
    from django.core.management import execute_from_command_line
    argv = list(argv or sys.argv)
    argv[0] = 'splinecraft'
    execute_from_command_line(argv)


if __name__ == '__main__':
    main()
