"""
Pruebas de la configuración por capas y de los perfiles por entorno.
"""

import json
import os
import shutil
import tempfile
import unittest
from unittest import mock

import config as modulo_config
from config import (
    ConfiguracionEntorno, ConfiguracionProduccion, ConfiguracionPruebas, validar_configuracion
)
from utils.config_manager import ConfigManager, config_manager, limite


class TestConfigManager(unittest.TestCase):
    """Prioridades entre valores por defecto, archivo, entorno y set()"""

    def setUp(self):
        self.temp_dir = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.temp_dir, ignore_errors=True)

    def _escribir(self, nombre, contenido):
        with open(os.path.join(self.temp_dir, nombre), 'w', encoding='utf-8') as f:
            f.write(contenido)

    def test_valores_por_defecto(self):
        cm = ConfigManager(config_dir=self.temp_dir)
        self.assertEqual(cm.get('limites.endomorfismos'), 10 ** 7)
        self.assertEqual(cm.get('paralelo.bloque'), 4096)
        self.assertIsNone(cm.get('limites.inexistente'))
        self.assertEqual(cm.get('no.existe', 'x'), 'x')

    def test_archivo_yaml(self):
        self._escribir('config.yaml', "limites:\n  tuplas: 500\nparalelo:\n  workers: 3\n")
        cm = ConfigManager(config_dir=self.temp_dir, main_config_file='config.yaml')
        self.assertEqual(cm.get('limites.tuplas'), 500)
        self.assertEqual(cm.get('limites.cuerpo'), 2 ** 20)
        self.assertEqual(cm.get('paralelo.workers'), 3)

    def test_archivo_json_invalido(self):
        self._escribir('config.json', '{ no es json')
        cm = ConfigManager(config_dir=self.temp_dir)
        self.assertEqual(cm.get('limites.tuplas'), 10 ** 8)

    def test_entorno_sobre_archivo(self):
        self._escribir('config.json', json.dumps({'limites': {'tuplas': 500}}))
        with mock.patch.dict(os.environ, {'KAC_LIMITES_TUPLAS': '123', 'KAC_LOGGING_JSON': 'false'}):
            cm = ConfigManager(config_dir=self.temp_dir)
            self.assertEqual(cm.get('limites.tuplas'), 123)
            self.assertIs(cm.get('logging.json'), False)

    def test_set_sobrevive_a_recargas(self):
        self._escribir('config.json', json.dumps({'limites': {'cuerpo': 99}}))
        # Cada consulta relee todas las fuentes
        cm = ConfigManager(config_dir=self.temp_dir, cache_duration=-1)
        self.assertEqual(cm.get('limites.cuerpo'), 99)
        cm.set('limites.cuerpo', 77)
        self.assertEqual(cm.get('limites.cuerpo'), 77)
        self.assertEqual(cm.get('limites.tuplas'), 10 ** 8)

    def test_conversion_de_tipos(self):
        self.assertEqual(ConfigManager._coerce('-3'), -3)
        self.assertEqual(ConfigManager._coerce('1.5'), 1.5)
        self.assertIs(ConfigManager._coerce('on'), True)
        self.assertEqual(ConfigManager._coerce('datos/x'), 'datos/x')


class TestPerfiles(unittest.TestCase):
    """Perfiles por entorno y validación"""

    def test_perfil_de_pruebas_aplicado(self):
        self.assertIsInstance(modulo_config.config, ConfiguracionPruebas)
        self.assertEqual(limite('tuplas'), 10 ** 6)
        self.assertEqual(limite('endomorfismos'), 10 ** 5)
        self.assertEqual(config_manager.get('limites.cuerpo'), 2 ** 12)

    def test_seleccion_por_entorno(self):
        with mock.patch.dict(os.environ, {'ENVIRONMENT': 'production'}):
            self.assertIsInstance(ConfiguracionEntorno.obtener_config(), ConfiguracionProduccion)

    def test_validacion_correcta(self):
        validar_configuracion(ConfiguracionPruebas())

    def test_validacion_con_errores(self):
        class Rota(ConfiguracionPruebas):
            LIMITES = {'tuplas': 0, 'endomorfismos': 10, 'cuerpo': 10}
            PARALELO = {'workers': 0, 'bloque': 8}

        with self.assertRaises(ValueError) as ctx:
            validar_configuracion(Rota())
        self.assertIn('tuplas', str(ctx.exception))
        self.assertIn('trabajadores', str(ctx.exception))

    def test_directorios_temporales(self):
        perfil = ConfiguracionPruebas()
        perfil.preparar_directorios()
        self.assertTrue(os.path.isdir(perfil.FIXTURES_DIR))
        self.assertTrue(perfil.LOG_DIR.startswith(perfil.TEMP_DIR))


if __name__ == '__main__':
    unittest.main()
