"""python -m opspace <build|verify|distance|classify> ..."""

import os
import sys


def main():
    os.environ.setdefault("DJANGO_SETTINGS_MODULE", "opspace.settings")
    from django.core.management import execute_from_command_line

    execute_from_command_line([sys.argv[0], "opspace", *sys.argv[1:]])


if __name__ == "__main__":
    main()
