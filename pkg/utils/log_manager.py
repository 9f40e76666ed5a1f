"""
Sistema de logging del motor de conteo.

Configura una consola con colores (stderr, para no mezclarse con los
informes JSON de stdout), un archivo JSON por líneas, un archivo sólo de
errores y un registro de métricas alimentado por PerformanceTracker.
"""

import sys
import json
import logging
import logging.handlers
import threading
import time
import traceback
import uuid
from functools import wraps
from pathlib import Path
from typing import Optional

from colorama import Fore, Style, init as colorama_init

class ColoredFormatter(logging.Formatter):
    """Formateador con colores para la consola."""

    COLORS = {
        'DEBUG': Fore.BLUE,
        'INFO': Fore.GREEN,
        'WARNING': Fore.YELLOW,
        'ERROR': Fore.RED,
        'CRITICAL': Fore.RED + Style.BRIGHT,
    }

    def format(self, record):
        levelname = record.levelname
        if levelname in self.COLORS:
            record.levelname = f"{self.COLORS[levelname]}{levelname}{Style.RESET_ALL}"
        try:
            return super().format(record)
        finally:
            record.levelname = levelname


_ATRIBUTOS_ESTANDAR = {
    'args', 'asctime', 'created', 'exc_info', 'exc_text', 'filename', 'funcName', 'id',
    'levelname', 'levelno', 'lineno', 'module', 'msecs', 'message', 'msg', 'name', 'pathname',
    'process', 'processName', 'relativeCreated', 'stack_info', 'thread', 'threadName', 'taskName'
}

class JSONFormatter(logging.Formatter):
    """Una línea JSON por registro, con los atributos extra incluidos."""

    def format(self, record):
        log_dict = {
            'timestamp': self.formatTime(record, self.datefmt),
            'level': record.levelname,
            'name': record.name,
            'message': record.getMessage()
        }

        if record.exc_info:
            log_dict['exception'] = {
                'type': record.exc_info[0].__name__,
                'message': str(record.exc_info[1]),
                'traceback': traceback.format_exception(*record.exc_info)
            }

        for key, value in record.__dict__.items():
            if key in _ATRIBUTOS_ESTANDAR:
                continue
            try:
                json.dumps({key: value})
                log_dict[key] = value
            except (TypeError, OverflowError):
                log_dict[key] = str(value)

        return json.dumps(log_dict, ensure_ascii=False)


class EjecucionFilter(logging.Filter):
    """Añade a cada registro el identificador de la ejecución en curso."""

    def __init__(self):
        super().__init__()
        self._local = threading.local()

    def filter(self, record):
        ejecucion = getattr(self._local, 'ejecucion', None)
        if ejecucion:
            record.ejecucion = ejecucion
        return True

    def set_ejecucion(self, ejecucion: str):
        self._local.ejecucion = ejecucion

    def clear_ejecucion(self):
        if hasattr(self._local, 'ejecucion'):
            del self._local.ejecucion


class PerformanceTracker:
    """
    Rastrea la duración de operaciones costosas (conteos, verificaciones).
    """

    def __init__(self, logger_name='performance'):
        self.logger = logging.getLogger(logger_name)
        self._local = threading.local()

    def start_operation(self, operation_name: str, **context):
        """
        Inicia una operación a rastrear.

        Args:
            operation_name: Nombre de la operación
            **context: Información contextual (álgebra, dimensión, q...)
        """
        if not hasattr(self._local, 'operations'):
            self._local.operations = {}

        self._local.operations[operation_name] = {
            'start_time': time.time(),
            'context': context
        }

    def end_operation(self, operation_name: str, status='success', **extra_data) -> Optional[float]:
        """
        Finaliza una operación y registra su duración.

        Returns:
            Duración en segundos, o None si la operación no se había iniciado
        """
        if (not hasattr(self._local, 'operations') or
                operation_name not in self._local.operations):
            self.logger.warning(f"Intentando finalizar operación '{operation_name}' no iniciada")
            return None

        start_data = self._local.operations.pop(operation_name)
        duration = time.time() - start_data['start_time']

        log_data = {
            **start_data['context'],
            **extra_data,
            'operation': operation_name,
            'duration_ms': int(duration * 1000),
            'status': status
        }

        if status == 'error':
            self.logger.error(f"Operación '{operation_name}' completada con error en {duration:.3f}s",
                              extra=log_data)
        else:
            self.logger.info(f"Operación '{operation_name}' completada en {duration:.3f}s", extra=log_data)
        return duration


class LogManager:
    """
    Gestor centralizado de logs.
    """

    def __init__(self, app_name: str = "kac", log_dir: str = "logs"):
        """
        Args:
            app_name: Prefijo de los archivos de log
            log_dir: Directorio para los archivos de log
        """
        self.app_name = app_name
        self.log_dir = Path(log_dir)
        self.ejecucion_filter = EjecucionFilter()
        self.performance = PerformanceTracker()
        self._initialized = False

    def _rotativo(self, nombre: str, nivel: int, json_logs: bool, max_file_size: int,
                  backup_count: int) -> logging.Handler:
        handler = logging.handlers.RotatingFileHandler(
            filename=self.log_dir / nombre,
            maxBytes=max_file_size,
            backupCount=backup_count,
            encoding='utf-8'
        )
        handler.setLevel(nivel)
        if json_logs:
            handler.setFormatter(JSONFormatter())
        else:
            handler.setFormatter(logging.Formatter(
                '%(asctime)s [%(levelname)s] %(name)s (%(filename)s:%(lineno)d): %(message)s'))
        handler.addFilter(self.ejecucion_filter)
        return handler

    def configure(
        self,
        console_level: str = 'INFO',
        file_level: str = 'DEBUG',
        json_logs: bool = True,
        max_file_size: int = 10 * 1024 * 1024,
        backup_count: int = 5,
        enable_metrics: bool = True,
        log_dir: Optional[str] = None
    ):
        """
        Configura el logger raíz una sola vez.

        Args:
            console_level: Nivel de log para la consola
            file_level: Nivel de log para los archivos
            json_logs: Si True, los archivos se escriben en JSON por líneas
            max_file_size: Tamaño máximo de cada archivo
            backup_count: Número de archivos de respaldo
            enable_metrics: Habilitar el registro de métricas de rendimiento
            log_dir: Sustituye al directorio indicado en el constructor
        """
        if self._initialized:
            return
        if log_dir is not None:
            self.log_dir = Path(log_dir)
        self.log_dir.mkdir(parents=True, exist_ok=True)
        colorama_init()

        root_logger = logging.getLogger()
        root_logger.setLevel(logging.DEBUG)
        for handler in root_logger.handlers[:]:
            root_logger.removeHandler(handler)

        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setLevel(getattr(logging, console_level))
        console_handler.setFormatter(ColoredFormatter('%(asctime)s [%(levelname)s] %(name)s: %(message)s'))
        console_handler.addFilter(self.ejecucion_filter)
        root_logger.addHandler(console_handler)

        root_logger.addHandler(self._rotativo(f"{self.app_name}.log", getattr(logging, file_level),
                                              json_logs, max_file_size, backup_count))
        root_logger.addHandler(self._rotativo(f"{self.app_name}_error.log", logging.ERROR,
                                              json_logs, max_file_size, backup_count))

        if enable_metrics:
            perf_logger = logging.getLogger('performance')
            perf_logger.setLevel(logging.INFO)
            perf_logger.addHandler(self._rotativo(f"{self.app_name}_metrics.log", logging.INFO,
                                                  True, max_file_size, backup_count))
            perf_logger.propagate = False

        # joblib informa de cada tarea en DEBUG
        logging.getLogger('joblib').setLevel(logging.WARNING)

        self._initialized = True

        logging.getLogger(self.app_name).info(
            f"Sistema de logs configurado: console={console_level}, file={file_level}, "
            f"json={json_logs}, métricas={enable_metrics}")

    def set_ejecucion(self, ejecucion: Optional[str] = None) -> str:
        """Marca los registros del hilo actual con un identificador de ejecución."""
        ejecucion = ejecucion or uuid.uuid4().hex[:12]
        self.ejecucion_filter.set_ejecucion(ejecucion)
        return ejecucion

    def clear_ejecucion(self):
        self.ejecucion_filter.clear_ejecucion()


def log_execution_time(func=None, logger_name=None, level=logging.DEBUG):
    """
    Decorador que registra el tiempo de ejecución de una función.

    Args:
        func: Función a decorar
        logger_name: Nombre del logger a utilizar
        level: Nivel de log para el mensaje
    """
    def decorator(func):
        @wraps(func)
        def wrapper(*args, **kwargs):
            log = logging.getLogger(logger_name or func.__module__)
            start_time = time.time()
            func_name = f"{func.__module__}.{func.__name__}"

            try:
                result = func(*args, **kwargs)
                elapsed = time.time() - start_time
                log.log(level, f"Función {func_name} ejecutada en {elapsed:.3f}s")
                return result
            except Exception as e:
                elapsed = time.time() - start_time
                log.error(f"Error en {func_name} después de {elapsed:.3f}s: {str(e)}")
                raise

        return wrapper

    if func is None:
        return decorator
    return decorator(func)


# Instancia global para uso en toda la aplicación
log_manager = LogManager()
