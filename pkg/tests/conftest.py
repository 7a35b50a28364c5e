import django
from django.conf import settings

from tests.settings import HELPER_SETTINGS


def pytest_configure(config):
    if settings.configured:
        return
    options = dict(HELPER_SETTINGS)
    options['INSTALLED_APPS'] = ['gdirac'] + list(options['INSTALLED_APPS'])
    settings.configure(
        DATABASES={'default': {'ENGINE': 'django.db.backends.sqlite3', 'NAME': ':memory:'}},
        **options,
    )
    django.setup()
