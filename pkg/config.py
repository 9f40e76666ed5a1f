"""
Configuración del motor de conteo de polinomios de Kac por entorno.

El entorno se elige con la variable ENVIRONMENT (development, testing o
production). Los límites de recursos y el paralelismo se leen de
utils.config_manager; cada perfil puede sustituirlos al aplicarse.
"""

import os
import logging
import tempfile

from utils.config_manager import config_manager
from utils.log_manager import log_manager


class ConfiguracionSistema:
    """Configuración general del sistema"""

    # Archivos y directorios
    BASE_DIR = os.path.dirname(os.path.abspath(__file__))
    DATA_DIR = os.path.join(BASE_DIR, 'data')
    FIXTURES_DIR = os.path.join(BASE_DIR, config_manager.get('salida.fixtures', 'data/fixtures'))
    RESULTS_DIR = os.path.join(BASE_DIR, config_manager.get('salida.resultados', 'data/resultados'))
    LOG_DIR = os.path.join(BASE_DIR, config_manager.get('logging.dir', 'logs'))

    DEBUG = False
    TESTING = False

    # Límites de recursos; None deja el valor de config_manager
    LIMITES = {
        'tuplas': None,
        'endomorfismos': None,
        'cuerpo': None
    }

    PARALELO = {
        'workers': config_manager.get('paralelo.workers', 1),
        'bloque': config_manager.get('paralelo.bloque', 4096)
    }

    LOGGING_CONFIG = {
        'console_level': config_manager.get('logging.level', 'INFO'),
        'file_level': 'DEBUG',
        'json_logs': config_manager.get('logging.json', True),
        'enable_metrics': True
    }

    # Batería de aceptación
    SUITE = {
        'campos_kac': [2, 3, 4, 5, 7, 8, 9],
        'confirmacion_kac': [11],
        'workers_determinismo': [1, 2, 8]
    }

    def aplicar(self):
        """Vuelca los límites y el paralelismo del perfil en config_manager."""
        for nombre, valor in self.LIMITES.items():
            if valor is not None:
                config_manager.set(f'limites.{nombre}', valor)
        for nombre, valor in self.PARALELO.items():
            config_manager.set(f'paralelo.{nombre}', valor)

    def preparar_directorios(self):
        for directorio in [self.DATA_DIR, self.FIXTURES_DIR, self.RESULTS_DIR, self.LOG_DIR]:
            os.makedirs(directorio, exist_ok=True)


class ConfiguracionEntorno:
    """Configuración específica por entorno"""

    @staticmethod
    def obtener_config():
        env = os.getenv('ENVIRONMENT', 'development')

        if env == 'production':
            return ConfiguracionProduccion()
        elif env == 'testing':
            return ConfiguracionPruebas()
        else:
            return ConfiguracionDesarrollo()


class ConfiguracionDesarrollo(ConfiguracionSistema):
    """Configuración para entorno de desarrollo"""

    DEBUG = True

    LOGGING_CONFIG = {
        **ConfiguracionSistema.LOGGING_CONFIG,
        'console_level': 'DEBUG'
    }


class ConfiguracionProduccion(ConfiguracionSistema):
    """Configuración para entorno de producción"""

    LOGGING_CONFIG = {
        **ConfiguracionSistema.LOGGING_CONFIG,
        'console_level': 'WARNING'
    }


class ConfiguracionPruebas(ConfiguracionSistema):
    """Configuración para entorno de pruebas"""

    TESTING = True

    TEMP_DIR = tempfile.mkdtemp(prefix='kac_pruebas_')
    DATA_DIR = os.path.join(TEMP_DIR, 'data')
    FIXTURES_DIR = os.path.join(DATA_DIR, 'fixtures')
    RESULTS_DIR = os.path.join(DATA_DIR, 'resultados')
    LOG_DIR = os.path.join(TEMP_DIR, 'logs')

    # Límites bajos para que un error de tamaño falle pronto
    LIMITES = {
        'tuplas': 10 ** 6,
        'endomorfismos': 10 ** 5,
        'cuerpo': 2 ** 12
    }

    LOGGING_CONFIG = {
        **ConfiguracionSistema.LOGGING_CONFIG,
        'console_level': 'ERROR',
        'enable_metrics': False
    }


# Configuración por defecto
config = ConfiguracionEntorno.obtener_config()
config.aplicar()


def configurar_logging(configuracion: ConfiguracionSistema = None, console_level: str = None):
    """Configura el sistema de logging con los valores del perfil."""
    configuracion = configuracion or config
    opciones = dict(configuracion.LOGGING_CONFIG)
    if console_level:
        opciones['console_level'] = console_level
    log_manager.configure(log_dir=configuracion.LOG_DIR, **opciones)
    return logging.getLogger('kac')


def validar_configuracion(configuracion: ConfiguracionSistema = None):
    """
    Valida la configuración vigente.

    Raises:
        ValueError: con la lista de todos los problemas encontrados
    """
    configuracion = configuracion or config
    errores = []

    for nombre in ('tuplas', 'endomorfismos', 'cuerpo'):
        valor = configuracion.LIMITES.get(nombre)
        if valor is None:
            valor = config_manager.get(f'limites.{nombre}')
        if not isinstance(valor, int) or isinstance(valor, bool) or valor < 1:
            errores.append(f"Límite '{nombre}' inválido: {valor!r}")

    workers = configuracion.PARALELO.get('workers')
    if not isinstance(workers, int) or workers < 1:
        errores.append(f"Número de trabajadores inválido: {workers!r}")
    bloque = configuracion.PARALELO.get('bloque')
    if not isinstance(bloque, int) or bloque < 1:
        errores.append(f"Tamaño de bloque inválido: {bloque!r}")

    if configuracion.LOGGING_CONFIG.get('console_level') not in ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'):
        errores.append(f"Nivel de log inválido: {configuracion.LOGGING_CONFIG.get('console_level')!r}")

    if errores:
        logger = logging.getLogger('kac')
        logger.error("Errores de configuración encontrados:")
        for error in errores:
            logger.error(f"  - {error}")
        raise ValueError(f"Configuración inválida: {', '.join(errores)}")


__all__ = [
    'config',
    'ConfiguracionSistema',
    'ConfiguracionEntorno',
    'ConfiguracionDesarrollo',
    'ConfiguracionProduccion',
    'ConfiguracionPruebas',
    'configurar_logging',
    'validar_configuracion'
]
