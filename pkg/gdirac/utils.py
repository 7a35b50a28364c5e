import logging
import os
from concurrent.futures import ThreadPoolExecutor

from django.conf import settings
from django.core.exceptions import ImproperlyConfigured

from .constants import DEFAULT_SETTINGS, GDIRAC_THREADS


logger = logging.getLogger(__name__)


def get_setting(name):
    if not settings.configured:
        return DEFAULT_SETTINGS[name]
    return getattr(settings, name, DEFAULT_SETTINGS[name])


def get_thread_count():
    value = get_setting(GDIRAC_THREADS)
    try:
        threads = int(value)
    except (TypeError, ValueError):
        raise ImproperlyConfigured(f"{GDIRAC_THREADS} must be an integer, got {value!r}")
    if threads < 1:
        raise ImproperlyConfigured(f"{GDIRAC_THREADS} must be at least 1, got {threads}")
    return threads


def threads_from_environ(environ=None):
    environ = os.environ if environ is None else environ
    return environ.get(GDIRAC_THREADS, DEFAULT_SETTINGS[GDIRAC_THREADS])


def parallel_map(func, items):
    """Map ``func`` over ``items`` keeping the order, on at most GDIRAC_THREADS threads."""
    items = list(items)
    threads = get_thread_count()
    if threads == 1 or len(items) < 2:
        return [func(item) for item in items]
    logger.debug(f"mapping {len(items)} items on {threads} threads")
    with ThreadPoolExecutor(max_workers=threads) as executor:
        return list(executor.map(func, items))
