"""
Pruebas de extremo a extremo del motor de conteo de polinomios de Kac.
Ejecuta la línea de comandos completa (argumentos, validación, conteo,
informe JSON y código de salida) y la batería de aceptación.
"""

import os
import sys
import json
import unittest
import tempfile
import shutil
import io
from contextlib import redirect_stdout

import pandas as pd
import pytest

# Perfil de pruebas antes de importar config
os.environ.setdefault('ENVIRONMENT', 'testing')

from algebra.enumeracion import limpiar_cache
from contar_kac import (
    SALIDA_FALLO, SALIDA_LIMITE, SALIDA_OK, SALIDA_VALIDACION, main as contar_kac
)
from sistema_verificacion import SistemaVerificacion, comparar_con_archivo, diferencias


def ejecutar(*argumentos):
    """Ejecuta la línea de comandos y devuelve (código, informe JSON)."""
    salida = io.StringIO()
    with redirect_stdout(salida):
        codigo = contar_kac(list(argumentos))
    return codigo, json.loads(salida.getvalue())


class TestLineaDeComandos(unittest.TestCase):
    """Subcomandos con valores conocidos y códigos de salida"""

    @classmethod
    def setUpClass(cls):
        """Configuración inicial para todas las pruebas"""
        cls.temp_dir = tempfile.mkdtemp()

    @classmethod
    def tearDownClass(cls):
        """Limpieza después de todas las pruebas"""
        if os.path.exists(cls.temp_dir):
            shutil.rmtree(cls.temp_dir)

    def setUp(self):
        limpiar_cache()

    def test_euler(self):
        codigo, informe = ejecutar('euler', '--p', '2,3', '--x', 'e', '--y', 'delta')
        self.assertEqual(codigo, SALIDA_OK)
        self.assertEqual(informe['euler'], 1)
        self.assertEqual(informe['sym'], 0)
        self.assertEqual(informe['slope'], ['0/1', 'inf'])
        self.assertEqual((informe['kappa'], informe['genus']), (-5, '-3/2'))
        self.assertIn('elapsed_ms', informe)
        print("✓ Forma de Euler: OK")

    def test_count(self):
        codigo, informe = ejecutar('count', '--dim', '1,1,1,1', '--field', '2')
        self.assertEqual(codigo, SALIDA_OK)
        self.assertEqual((informe['solutions'], informe['value']), (16, 5))
        self.assertEqual((informe['A_T'], informe['A_F']), (5, 0))

        codigo, informe = ejecutar('count', '--algebra', 'squid', '--dim', '1,1,1,1', '--field', '2')
        self.assertEqual(codigo, SALIDA_OK)
        self.assertEqual((informe['solutions'], informe['value']), (9, 0))
        print("✓ Conteo directo: OK")

    def test_polinomio(self):
        codigo, informe = ejecutar('kac', '--dim', '1,1,1,1', '--fields', '2,3,4,5')
        self.assertEqual(codigo, SALIDA_OK)
        self.assertEqual(informe['polynomial'], [3, 1])
        self.assertNotIn('poly', informe)

        codigo, informe = ejecutar('kac', '--dim', '1,0,0,0', '--fields', '2,3,4', '--desde-nil')
        self.assertEqual(codigo, SALIDA_OK)
        self.assertEqual((informe['polynomial'], informe['provenance']), ([1], 'nil-inversion'))
        print("✓ Polinomio de Kac: OK")

    def test_volumenes(self):
        codigo, informe = ejecutar('volume', '--d1', '0,1,0,0', '--d2', '1,0,0,0', '--field', '2')
        self.assertEqual(codigo, SALIDA_OK)
        self.assertEqual(informe['value'], '1/1')

        codigo, informe = ejecutar('volume', '--bound', '1,0,0,0', '--field', '2')
        self.assertEqual(codigo, SALIDA_OK)
        self.assertEqual(informe['coeficientes'], [{'dim': [0, 0, 0, 0], 'value': '1/1'},
                                                   {'dim': [1, 0, 0, 0], 'value': '1/1'}])

        codigo, informe = ejecutar('nil-volume', '--dim', '2,0,0,0', '--field', '3')
        self.assertEqual(codigo, SALIDA_OK)
        self.assertEqual(informe['value'], '3/16')

    def test_comprobaciones(self):
        codigo, informe = ejecutar('stratum-check', '--dim', '2,0,0,0', '--field', '2',
                                   '--jordan', '0,0,0,0|1,0,0,0')
        self.assertEqual(codigo, SALIDA_OK)
        self.assertEqual((informe['lhs'], informe['rank_r']), ('1/2', -1))

        codigo, informe = ejecutar('nil-check', '--bound', '2,0,0,0', '--field', '2')
        self.assertEqual(codigo, SALIDA_OK)

        codigo, informe = ejecutar('torsion-check', '--dim', '0,1,1,0', '--fields', '2,3', '--lados')
        self.assertEqual(codigo, SALIDA_OK)
        self.assertEqual(len(informe['cuerpos']), 2)
        print("✓ Comprobaciones de identidades: OK")

    def test_errores_de_validacion(self):
        codigo, informe = ejecutar('count', '--p', '2,2,2,2', '--lambda', '3,3',
                                   '--dim', '1,1,1,1,1,1', '--field', '5')
        self.assertEqual(codigo, SALIDA_VALIDACION)
        self.assertEqual(informe['error']['campo'], 'lambda')

        codigo, informe = ejecutar('count', '--dim', '1,1,1', '--field', '2')
        self.assertEqual(codigo, SALIDA_VALIDACION)
        self.assertEqual(informe['error']['campo'], 'dim')

        codigo, informe = ejecutar('count', '--dim', '1,1,1,1', '--field', '6')
        self.assertEqual(codigo, SALIDA_VALIDACION)

        codigo, informe = ejecutar('count', '--dim', '1,x,1,1', '--field', '2')
        self.assertEqual(codigo, SALIDA_VALIDACION)

        codigo, informe = ejecutar('euler', '--x', 'e_5_0', '--y', 'e')
        self.assertEqual(codigo, SALIDA_VALIDACION)
        print("✓ Errores de validación: OK")

    def test_indeterminado(self):
        codigo, informe = ejecutar('kac', '--dim', '1,1,1,1', '--fields', '2,3')
        self.assertEqual(codigo, SALIDA_VALIDACION)
        self.assertEqual(informe['error']['tipo'], 'indeterminado')

    def test_limite(self):
        codigo, informe = ejecutar('count', '--dim', '2,2,2,2', '--field', '2', '--cap', '1000')
        self.assertEqual(codigo, SALIDA_LIMITE)
        self.assertEqual(informe['error']['exponente'], 16)
        self.assertEqual(informe['error']['limite'], 1000)
        print("✓ Límite de recursos: OK")

    def test_argumentos_invalidos(self):
        with self.assertRaises(SystemExit) as ctx:
            ejecutar('count', '--algebra', 'hereditaria', '--dim', '1', '--field', '2')
        self.assertEqual(ctx.exception.code, 2)

        codigo, _ = ejecutar('count', '--dim', '1,1,1,1', '--field', '2', '--out', 'salida.txt')
        self.assertEqual(codigo, SALIDA_VALIDACION)

    def test_salida_y_comparacion(self):
        ruta_json = os.path.join(self.temp_dir, 'count.json')
        ruta_csv = os.path.join(self.temp_dir, 'tabla.csv')

        codigo, _ = ejecutar('count', '--dim', '1,1,1,1', '--field', '3', '--out', ruta_json)
        self.assertEqual(codigo, SALIDA_OK)
        codigo, informe = ejecutar('count', '--dim', '1,1,1,1', '--field', '3', '--comparar', ruta_json)
        self.assertEqual(codigo, SALIDA_OK)
        self.assertEqual(informe['comparacion'], {'ok': True, 'diferencias': []})
        self.assertEqual(informe['comando'], 'count')

        codigo, informe = ejecutar('count', '--dim', '1,1,1,1', '--field', '2', '--comparar', ruta_json)
        self.assertEqual(codigo, SALIDA_FALLO)
        self.assertIn('value', informe['comparacion']['diferencias'])

        codigo, _ = ejecutar('kac', '--bound', '1,1,0,0', '--fields', '2,3,4,5', '--out', ruta_csv)
        self.assertEqual(codigo, SALIDA_OK)
        tabla = pd.read_csv(ruta_csv)
        self.assertEqual(len(tabla), 3)
        print("✓ Archivos de salida: OK")


class TestSistemaVerificacion(unittest.TestCase):
    """Batería de aceptación"""

    def test_criterios_algebraicos(self):
        sistema = SistemaVerificacion(rapido=True)
        informe = sistema.ejecutar([1, 2, 3])
        self.assertTrue(informe['ok'], [c for c in informe['criterios'] if not c['ok']])
        self.assertEqual([c['nombre'] for c in informe['criterios']], ['reticulo', 'tilting', 'euler'])
        print("✓ Criterios algebraicos: OK")

    def test_suite_por_linea_de_comandos(self):
        codigo, informe = ejecutar('suite', '--rapido', '--criterios', '1,8')
        self.assertEqual(codigo, SALIDA_OK)
        self.assertEqual([c['criterio'] for c in informe['criterios']], [1, 8])

        codigo, _ = ejecutar('suite', '--criterios', '11')
        self.assertEqual(codigo, SALIDA_VALIDACION)

    def test_diferencias(self):
        actual = {'a': [1, {'b': 2}], 'elapsed_ms': 3}
        self.assertEqual(diferencias(actual, {'a': [1, {'b': 3}], 'elapsed_ms': 9}), ['a[1].b', 'elapsed_ms'])
        with tempfile.NamedTemporaryFile('w', suffix='.json', delete=False) as f:
            json.dump({'a': [1, {'b': 2}], 'elapsed_ms': 100}, f)
        try:
            self.assertTrue(comparar_con_archivo(actual, f.name)['ok'])
        finally:
            os.unlink(f.name)

    @pytest.mark.lento
    def test_bateria_rapida(self):
        sistema = SistemaVerificacion(rapido=True)
        informe = sistema.ejecutar()
        fallidos = [c['nombre'] for c in informe['criterios'] if not c['ok']]
        self.assertEqual(fallidos, [])
        ruta = sistema.grabar_fixtures(informe, tempfile.mkdtemp())
        self.assertTrue(sistema.comparar_fixtures(informe, ruta)['ok'])
        print("✓ Batería rápida: OK")

    @pytest.mark.lento
    def test_polinomio_con_confirmacion(self):
        limpiar_cache()
        codigo, informe = ejecutar('kac', '--dim', '1,1,1,1', '--fields', '2,3,4,5', '--confirm', '7')
        self.assertEqual(codigo, SALIDA_OK)
        self.assertEqual(informe['confirm'], [{'q': 7, 'value': 10, 'polynomial': 10, 'ok': True}])


def ejecutar_pruebas_completas():
    """Ejecuta todas las pruebas del sistema"""
    print("=" * 60)
    print("EJECUTANDO PRUEBAS DEL MOTOR DE CONTEO")
    print("=" * 60)

    loader = unittest.TestLoader()
    suite = unittest.TestSuite()
    suite.addTests(loader.loadTestsFromTestCase(TestLineaDeComandos))
    suite.addTests(loader.loadTestsFromTestCase(TestSistemaVerificacion))

    runner = unittest.TextTestRunner(verbosity=2)
    resultado = runner.run(suite)

    print("\n" + "=" * 60)
    print("RESUMEN DE PRUEBAS")
    print("=" * 60)
    print(f"Pruebas ejecutadas: {resultado.testsRun}")
    print(f"Errores: {len(resultado.errors)}")
    print(f"Fallos: {len(resultado.failures)}")

    exito = len(resultado.errors) == 0 and len(resultado.failures) == 0
    print(f"\nResultado: {'✓ ÉXITO' if exito else '✗ HAY PROBLEMAS'}")
    return exito


if __name__ == '__main__':
    sys.exit(0 if ejecutar_pruebas_completas() else 1)
