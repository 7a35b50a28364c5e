from django.apps import AppConfig


class GraphDirac(AppConfig):
    name = 'gdirac'
    verbose_name = 'Dirac operators on metric graphs'
