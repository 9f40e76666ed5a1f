"""
Configuración común de pytest: perfil de pruebas y pruebas lentas opcionales.
"""

import os

import pytest

# Antes de importar config: límites bajos y logs en un directorio temporal
os.environ.setdefault('ENVIRONMENT', 'testing')


def pytest_collection_modifyitems(config, items):
    if os.getenv('KAC_PRUEBAS_LENTAS') == '1':
        return
    saltar = pytest.mark.skip(reason="prueba lenta: use KAC_PRUEBAS_LENTAS=1")
    for item in items:
        if 'lento' in item.keywords:
            item.add_marker(saltar)
