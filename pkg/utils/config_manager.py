"""
Gestor de configuración por capas para el motor de conteo.

Prioridad creciente: valores predeterminados, archivo principal
(JSON o YAML) del directorio config/ y variables de entorno con
prefijo KAC_ (también leídas desde un archivo .env).
"""

import os
import json
import logging
import threading
from typing import Dict, Any
from pathlib import Path
import time
from dotenv import load_dotenv
import yaml

logger = logging.getLogger('config_manager')

DIRECTORIO_CONFIG = Path(__file__).resolve().parent.parent / 'config'

class ConfigManager:
    """
    Gestor centralizado de configuración.
    Las claves anidadas se consultan con notación de puntos ('limites.tuplas').
    """

    def __init__(
        self,
        config_dir: str = str(DIRECTORIO_CONFIG),
        env_prefix: str = 'KAC_',
        main_config_file: str = 'config.json',
        cache_duration: int = 300
    ):
        """
        Inicializa el gestor de configuración.

        Args:
            config_dir: Directorio con los archivos de configuración
            env_prefix: Prefijo de las variables de entorno
            main_config_file: Archivo principal (.json, .yaml o .yml)
            cache_duration: Segundos antes de releer todas las fuentes
        """
        self.config_dir = Path(config_dir)
        self.env_prefix = env_prefix
        self.main_config_file = main_config_file
        self.cache_duration = cache_duration

        self._config: Dict[str, Any] = {}
        self._last_load_time = 0.0
        self._lock = threading.RLock()
        self._file_watchers: Dict[str, float] = {}
        # Valores fijados con set(); sobreviven a las recargas
        self._overrides: Dict[str, Any] = {}

        self._load_all_config()

        logger.debug(f"Config Manager inicializado: dir={self.config_dir}")

    def _load_all_config(self) -> None:
        """Carga la configuración de todas las fuentes."""
        with self._lock:
            self._config = self._load_defaults()
            self._merge_config(self._load_from_file())
            # Las variables de entorno tienen la mayor prioridad
            self._merge_config(self._load_from_env())
            for key, value in self._overrides.items():
                self._assign(key, value)
            self._last_load_time = time.time()

    def _merge_config(self, new_config: Dict[str, Any]) -> None:
        def deep_merge(target, source):
            for key, value in source.items():
                if key in target and isinstance(target[key], dict) and isinstance(value, dict):
                    deep_merge(target[key], value)
                else:
                    target[key] = value

        deep_merge(self._config, new_config)

    def _load_defaults(self) -> Dict[str, Any]:
        """Valores predeterminados; coinciden con config/config.json."""
        return {
            "app": {
                "name": "kac - conteo exacto de polinomios de Kac",
                "version": "1.0.0",
                "env": "development"
            },
            "limites": {
                "tuplas": 10 ** 8,
                "endomorfismos": 10 ** 7,
                "cuerpo": 2 ** 20
            },
            "paralelo": {
                "workers": 1,
                "bloque": 4096
            },
            "logging": {
                "level": "INFO",
                "dir": "logs",
                "json": True
            },
            "salida": {
                "fixtures": "data/fixtures",
                "resultados": "data/resultados"
            }
        }

    def _load_from_file(self) -> Dict[str, Any]:
        """Lee el archivo principal; un archivo ilegible se ignora con aviso."""
        main_config_path = self.config_dir / self.main_config_file
        if not main_config_path.exists():
            return {}

        try:
            with open(main_config_path, 'r', encoding='utf-8') as f:
                if main_config_path.suffix.lower() in ('.yaml', '.yml'):
                    config_data = yaml.safe_load(f)
                else:
                    config_data = json.load(f)
        except (OSError, ValueError, yaml.YAMLError) as e:
            logger.warning(f"Error al cargar configuración desde {main_config_path}: {e}")
            return {}

        if not isinstance(config_data, dict):
            logger.warning(f"{main_config_path} no contiene un objeto de configuración")
            return {}

        self._file_watchers[str(main_config_path)] = main_config_path.stat().st_mtime
        logger.debug(f"Configuración cargada desde {main_config_path}")
        return config_data

    @staticmethod
    def _coerce(value: str) -> Any:
        """Convierte el texto de una variable de entorno al tipo adecuado."""
        texto = value.strip()
        if texto.lstrip('-').isdigit():
            return int(texto)
        if texto.lower() in ('true', 'yes', 'on'):
            return True
        if texto.lower() in ('false', 'no', 'off'):
            return False
        try:
            return float(texto)
        except ValueError:
            return texto

    def _load_from_env(self) -> Dict[str, Any]:
        """
        Variables KAC_SECCION_CLAVE → {'seccion': {'clave': valor}}.
        """
        result: Dict[str, Any] = {}

        load_dotenv()

        for key, value in os.environ.items():
            if not key.startswith(self.env_prefix):
                continue

            config_path = key[len(self.env_prefix):].lower().split('_')
            current = result
            for part in config_path[:-1]:
                if not isinstance(current.get(part), dict):
                    current[part] = {}
                current = current[part]
            current[config_path[-1]] = self._coerce(value)

        return result

    def get(self, key: str, default: Any = None) -> Any:
        """
        Obtiene un valor por clave con notación de puntos.

        Args:
            key: Clave a buscar (ej: 'limites.tuplas')
            default: Valor si la clave no existe
        """
        self._check_reload()

        with self._lock:
            current = self._config
            for part in key.split('.'):
                if not isinstance(current, dict) or part not in current:
                    return default
                current = current[part]
            return current

    def set(self, key: str, value: Any) -> None:
        """Establece un valor en memoria; prevalece sobre archivo y entorno."""
        with self._lock:
            self._overrides[key] = value
            self._assign(key, value)

    def _assign(self, key: str, value: Any) -> None:
        parts = key.split('.')
        current = self._config
        for part in parts[:-1]:
            if part not in current or not isinstance(current[part], dict):
                current[part] = {}
            current = current[part]
        current[parts[-1]] = value

    def _check_reload(self) -> None:
        """Recarga si caducó la caché o cambió el archivo principal."""
        if time.time() - self._last_load_time > self.cache_duration:
            self._load_all_config()
            return

        for file_path, mtime in list(self._file_watchers.items()):
            path = Path(file_path)
            if path.exists() and path.stat().st_mtime > mtime:
                logger.debug(f"Detectado cambio en {file_path}, recargando configuración")
                self._load_all_config()
                return


# Instancia global para uso en toda la aplicación
config_manager = ConfigManager()


def limite(nombre: str) -> int:
    """Límite de recursos vigente ('tuplas', 'endomorfismos' o 'cuerpo')."""
    valor = config_manager.get(f'limites.{nombre}')
    if valor is None:
        valor = config_manager._load_defaults()['limites'][nombre]
    return int(valor)
