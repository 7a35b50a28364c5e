#!/usr/bin/env python
import sys


HELPER_SETTINGS = {
    'INSTALLED_APPS': [
        'tests',
    ],
    'LANGUAGE_CODE': 'en',
    'GDIRAC_THREADS': 1,
    'GDIRAC_SEED': 0,
}


def run():
    from app_helper import runner
    extra_args = sys.argv[1:] if len(sys.argv) > 1 else []
    runner.run('gdirac', [sys.argv[0]], extra_args=extra_args)


if __name__ == '__main__':
    run()
