from django.apps import AppConfig as DjangoAppConfig


class AppConfig(DjangoAppConfig):
    name = 'splinecraft'
    verbose_name = 'Splinecraft'
    project_name = 'Spline Reconstruction Toolkit'
    institution = 'Splinecraft'
