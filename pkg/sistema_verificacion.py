"""
Sistema de verificación del motor de polinomios de Kac.

Coordina la batería de aceptación completa:
- Retículo de Grothendieck (tabla de generadores, buena definición, κ y género)
- Compatibilidad tilting/Cartan
- Forma de Euler sobre vectores de dimensión
- Polinomialidad e integralidad
- Independencia de λ
- Consistencia con extensiones de cuerpo
- Identidad exponencial de pares nilpotentes y su inversión
- Estratificación de Jordan
- Identidades del par de torsión
- Determinismo frente al número de trabajadores
"""

import json
import logging
import os
import time
from fractions import Fraction
from typing import Callable, Dict, List, Optional

import numpy as np

from algebra.cuerpos import fraccion_a_texto, make_field
from algebra.enumeracion import (
    ABSOLUTOS, JORDAN, LADOS, NILPOTENTES, JordanType, limpiar_cache, nil_pairs_by_type, resumen_conteo,
    vectores_hasta
)
from algebra.errores import ErrorIndeterminado
from algebra.polinomios import (
    interpolate, kac_polynomial, kac_samples, presentacion_en, verify_extension,
    verify_lambda_independence
)
from algebra.presentaciones import CANONICA, TIPOS, build_presentation
from algebra.reticulo import (
    LatticeContext, RawKClass, euler, euler_raw, euler_ringel, normal_form, psi_inverse,
    tilting_compatibility
)
from algebra.series import nil_exp_check, recovery_check, stratum_check
from algebra.torsion import check_factorization, partition_check
from config import config
from utils.config_manager import config_manager
from utils.log_manager import log_execution_time

logger = logging.getLogger(__name__)

# κ y género esperados por pesos
INVARIANTES_ESPERADOS = {
    (2, 2): (-2, Fraction(0)),
    (2, 3): (-5, Fraction(-3, 2)),
    (2, 2, 2): (-1, Fraction(1, 2)),
    (2, 3, 5): (-1, Fraction(1, 2)),
}

FIXTURE_SUITE = 'suite.json'


def _sin_tiempos(datos):
    """Copia del informe sin los campos elapsed_ms."""
    if isinstance(datos, dict):
        return {k: _sin_tiempos(v) for k, v in datos.items() if k != 'elapsed_ms'}
    if isinstance(datos, list):
        return [_sin_tiempos(x) for x in datos]
    return datos


def _valor_tabla(ctx: LatticeContext, x, y) -> int:
    """
    ⟨x, y⟩ sobre generadores crudos, leído de la tabla: x, y son 'e' o (i, s)
    con i desde 0.
    """
    if x == 'e' and y == 'e':
        return 1
    if x == 'e':
        i, s = y
        return 1 if s == ctx.p[i] - 1 else 0
    if y == 'e':
        i, s = x
        return -1 if s == 0 else 0
    (i, s), (j, t) = x, y
    if i != j:
        return 0
    if s == t:
        return 1
    return -1 if s == (t + 1) % ctx.p[i] else 0


def _crudo(ctx: LatticeContext, generador) -> RawKClass:
    brazos = [[0] * pi for pi in ctx.p]
    if generador == 'e':
        return RawKClass(ctx, 1, tuple(tuple(b) for b in brazos))
    i, s = generador
    brazos[i][s] = 1
    return RawKClass(ctx, 0, tuple(tuple(b) for b in brazos))


class SistemaVerificacion:
    """Clase principal que coordina la batería de aceptación"""

    def __init__(self, rapido: bool = False, workers: Optional[int] = None,
                 cap: Optional[int] = None, semilla: int = 20240):
        logger.info("Inicializando sistema de verificación...")
        self.rapido = rapido
        self.workers = workers
        self.cap = cap
        self.semilla = semilla
        self.opciones = {'workers': workers, 'cap': cap}

        suite = config.SUITE
        self.campos_kac = [2, 3, 4, 5] if rapido else list(suite['campos_kac'])
        self.confirmacion_kac = [7] if rapido else list(suite['confirmacion_kac'])
        self.workers_determinismo = [1, 2] if rapido else list(suite['workers_determinismo'])
        self.cota_lambda = 3 if rapido else 5

        self.criterios: List[Callable[[], Dict]] = [
            self.criterio_reticulo,
            self.criterio_tilting,
            self.criterio_euler,
            self.criterio_polinomialidad,
            self.criterio_lambda,
            self.criterio_extension,
            self.criterio_exponencial,
            self.criterio_estratos,
            self.criterio_torsion,
            self.criterio_determinismo,
        ]
        logger.info(f"✓ Sistema listo ({'batería reducida' if rapido else 'batería completa'})")

    # ------------------------------------------------------------------
    # Criterios
    # ------------------------------------------------------------------

    def criterio_reticulo(self) -> Dict:
        """Tabla de generadores, buena definición en N_p, κ y género."""
        filas, ok = [], True
        rng = np.random.default_rng(self.semilla)
        for p, (kappa, genero) in INVARIANTES_ESPERADOS.items():
            ctx = LatticeContext(p)
            generadores = ['e'] + [(i, s) for i, pi in enumerate(p) for s in range(pi)]
            tabla_ok = all(
                euler_raw(_crudo(ctx, x), _crudo(ctx, y)) == _valor_tabla(ctx, x, y)
                for x in generadores for y in generadores
            )
            e, delta = ctx.e(), ctx.delta()
            tabla_ok &= (euler(e, delta), euler(delta, e), euler(delta, delta)) == (1, -1, 0)

            # Representantes de la misma clase: sumar δ_i − δ_j con i ≠ j
            coclases_ok = True
            total = 1000 // len(INVARIANTES_ESPERADOS)
            for _ in range(total):
                x = RawKClass(ctx, int(rng.integers(-3, 4)),
                              tuple(tuple(int(v) for v in rng.integers(-3, 4, pi)) for pi in p))
                y = RawKClass(ctx, int(rng.integers(-3, 4)),
                              tuple(tuple(int(v) for v in rng.integers(-3, 4, pi)) for pi in p))
                i, j = rng.choice(len(p), size=2, replace=False)
                k = int(rng.integers(-3, 4))
                brazos = [list(b) for b in x.arms]
                brazos[i] = [v + k for v in brazos[i]]
                brazos[j] = [v - k for v in brazos[j]]
                otro = RawKClass(ctx, x.e, tuple(tuple(b) for b in brazos))
                coclases_ok &= normal_form(otro) == normal_form(x)
                coclases_ok &= euler_raw(otro, y) == euler_raw(x, y)
                nx, ny = normal_form(x), normal_form(y)
                coclases_ok &= len({euler(nx, ny, brazo) for brazo in range(len(p))}) == 1
                coclases_ok &= euler(nx, ny) == euler_raw(x, y)

            invariantes_ok = ctx.kappa == kappa and ctx.genus == genero
            fila_ok = tabla_ok and coclases_ok and invariantes_ok
            ok &= fila_ok
            filas.append({
                'p': list(p), 'kappa': ctx.kappa, 'genus': fraccion_a_texto(ctx.genus),
                'tabla': tabla_ok, 'coclases': coclases_ok, 'ok': fila_ok
            })
        return {'ok': ok, 'filas': filas}

    def criterio_tilting(self) -> Dict:
        """⟨[T_v],[T_w]⟩ = C[v][w] en ambos tipos."""
        F = make_field(5)
        filas, ok = [], True
        for kind in TIPOS:
            for p in [(2, 2), (2, 3), (2, 2, 2)]:
                lambdas = (2,) * (len(p) - 2)
                compat = tilting_compatibility(build_presentation(kind, p, lambdas, F))
                fila_ok = all(f['ok'] for f in compat)
                ok &= fila_ok
                filas.append({'algebra': kind, 'p': list(p), 'pares': len(compat), 'ok': fila_ok,
                              'fallos': [f for f in compat if not f['ok']]})
        return {'ok': ok, 'filas': filas}

    def criterio_euler(self) -> Dict:
        """euler_mod frente a la fórmula de vértices, flechas y relaciones, entradas ≤ 2."""
        F = make_field(5)
        filas, ok = [], True
        for kind in TIPOS:
            for p in [(2, 2), (2, 2, 2)]:
                pres = build_presentation(kind, p, (2,) * (len(p) - 2), F)
                vectores = vectores_hasta((2,) * pres.n_vertices, incluir_cero=True)
                clases: Dict = {d: psi_inverse(pres, d) for d in vectores}
                fallos = []
                for d in vectores:
                    for e in vectores:
                        if euler(clases[d], clases[e]) != euler_ringel(pres, d, e):
                            fallos.append({'d': list(d), 'e': list(e)})
                fila_ok = not fallos
                ok &= fila_ok
                filas.append({'algebra': kind, 'p': list(p), 'pares': len(vectores) ** 2,
                              'ok': fila_ok, 'fallos': fallos[:10]})
        return {'ok': ok, 'filas': filas}

    def criterio_polinomialidad(self) -> Dict:
        """A_d(q) interpolado e íntegro para la canónica (2,2), d = (1,1,1,1)."""
        informe = kac_polynomial(CANONICA, (2, 2), (), (1, 1, 1, 1), self.campos_kac,
                                 self.confirmacion_kac, **self.opciones)
        informe.pop('poly')
        return informe

    def criterio_lambda(self) -> Dict:
        """Mismos conteos para cada λ_3 sobre F_5, p = (2,2,2), Σd ≤ cota."""
        F = make_field(5)
        conjuntos = [(lam,) for lam in range(1, 5)]
        filas, ok = [], True
        for kind in TIPOS:
            pres = build_presentation(kind, (2, 2, 2), (1,), F)
            for d in vectores_hasta((self.cota_lambda,) * pres.n_vertices):
                if sum(d) > self.cota_lambda:
                    continue
                informe = verify_lambda_independence(kind, (2, 2, 2), d, F, conjuntos, **self.opciones)
                ok &= informe['ok']
                if not informe['ok']:
                    filas.append({'algebra': kind, **informe})
            logger.info(f"Independencia de λ comprobada para {kind}")
        return {'ok': ok, 'cota': self.cota_lambda, 'fallos': filas}

    def criterio_extension(self) -> Dict:
        """Polinomio desde primos evaluado en 4 y 9 frente al conteo directo."""
        primos = [2, 3, 5, 7, 11]
        filas, ok = [], True
        for d in vectores_hasta((1, 1, 1, 1)):
            muestras = kac_samples(CANONICA, (2, 2), (), d, primos, **self.opciones)
            try:
                poly = interpolate(muestras, d)
            except ErrorIndeterminado as e:
                ok = False
                filas.append({'dim': list(d), 'ok': False, 'error': e.to_dict()})
                continue
            for q0 in (2, 3):
                informe = verify_extension(poly, presentacion_en(CANONICA, (2, 2), (), q0), 2,
                                           **self.opciones)
                ok &= informe['ok']
                filas.append(informe)
        return {'ok': ok, 'filas': filas}

    def criterio_exponencial(self) -> Dict:
        """Identidad exponencial de Nil^T y recuperación de A sobre F_2."""
        pres = presentacion_en(CANONICA, (2, 2), (), 2)
        cero = pres.quiver.indice(0)
        doble_simple = tuple(2 if v == cero else 0 for v in range(pres.n_vertices))
        filas, ok = [], True
        for cota in [(1, 1, 1, 1), doble_simple]:
            exp = nil_exp_check(pres, cota, **self.opciones)
            recuperacion = recovery_check(pres, cota, **self.opciones)
            ok &= exp['ok'] and recuperacion['ok']
            if not exp['ok_completo']:
                logger.info(f"Variante completa de la identidad exponencial distinta en B = {cota}")
            filas.append({'bound': list(cota), 'exp_T': exp['ok'], 'exp_completo': exp['ok_completo'],
                          'recuperacion': recuperacion['ok'], 'valores': recuperacion['valores']})
        return {'ok': ok, 'filas': filas}

    def criterio_estratos(self) -> Dict:
        """
        Estratos de una y dos partes en d = 2·S_0, y todos los estratos de
        varias partes en d = 2·S_0 + S_{(1,1)} y d = 2·S_0 + S_{(1,1)} + S_{(2,1)}, q ∈ {2, 3}.
        """
        filas, ok = [], True
        for q in (2, 3):
            pres = presentacion_en(CANONICA, (2, 2), (), q)

            def simple(v):
                return tuple(1 if w == pres.quiver.indice(v) else 0 for w in range(pres.n_vertices))

            nulo = (0,) * pres.n_vertices
            doble = tuple(2 * x for x in simple(0))
            casos = [(doble, JordanType((doble,))), (doble, JordanType((nulo, simple(0))))]
            for d in (tuple(a + b for a, b in zip(doble, simple((1, 1)))),
                      tuple(a + b + c for a, b, c in zip(doble, simple((1, 1)), simple((2, 1))))):
                tipos = nil_pairs_by_type(pres, d, solo_T=True, **self.opciones)
                casos += [(d, tipo) for tipo in sorted(tipos, key=str) if len(tipo.partes) > 1]

            for d, tipo in casos:
                informe = stratum_check(pres, d, tipo, **self.opciones)
                ok &= informe['ok']
                filas.append(informe)
        return {'ok': ok, 'filas': filas}

    def criterio_torsion(self) -> Dict:
        """Partición y factorización bigraduada en d = (1,1,1,1)."""
        filas, ok = [], True
        for kind in TIPOS:
            for q in (2, 3):
                pres = presentacion_en(kind, (2, 2), (), q)
                particion = partition_check(pres, (1, 1, 1, 1), **self.opciones)
                factorizacion = check_factorization(pres, (1, 1, 1, 1), **self.opciones)
                fila_ok = particion['ok'] and factorizacion['ok']
                ok &= fila_ok
                filas.append({'algebra': kind, 'q': q, 'particion': particion['ok'],
                              'factorizacion': factorizacion['ok'], 'fallo': factorizacion['fallo'],
                              'ok': fila_ok})
        return {'ok': ok, 'filas': filas}

    def criterio_determinismo(self) -> Dict:
        """Los totales de una pasada completa no dependen del número de trabajadores."""
        tareas = (ABSOLUTOS, NILPOTENTES, LADOS, JORDAN)
        bloque_previo = config_manager.get('paralelo.bloque')
        config_manager.set('paralelo.bloque', 8)
        resultados = {}
        try:
            for workers in self.workers_determinismo:
                limpiar_cache()
                resumenes = []
                for kind in TIPOS:
                    pres = presentacion_en(kind, (2, 2), (), 3)
                    resumenes.append(resumen_conteo(pres, (1, 1, 1, 1), tareas,
                                                    workers=workers, cap=self.cap))
                resultados[workers] = resumenes
        finally:
            config_manager.set('paralelo.bloque', bloque_previo)
            limpiar_cache()
        referencia = resultados[self.workers_determinismo[0]]
        ok = all(r == referencia for r in resultados.values())
        return {
            'ok': ok,
            'workers': self.workers_determinismo,
            'soluciones': [r.soluciones for r in referencia],
            'suma_unidades': [r.suma_unidades for r in referencia]
        }

    # ------------------------------------------------------------------
    # Ejecución
    # ------------------------------------------------------------------

    @log_execution_time
    def ejecutar(self, seleccion: Optional[List[int]] = None) -> Dict:
        """
        Ejecuta los criterios seleccionados (todos por defecto, numerados desde 1).

        Los errores de validación o de límite se propagan; un criterio que
        no se cumple sólo marca ok = False.
        """
        seleccion = seleccion or list(range(1, len(self.criterios) + 1))
        informes = []
        for numero in seleccion:
            criterio = self.criterios[numero - 1]
            nombre = criterio.__name__.replace('criterio_', '')
            logger.info(f"Criterio {numero}: {nombre}...")
            inicio = time.perf_counter()
            informe = criterio()
            informe = {'criterio': numero, 'nombre': nombre, **informe,
                       'elapsed_ms': round((time.perf_counter() - inicio) * 1000, 1)}
            if informe['ok']:
                logger.info(f"✓ Criterio {numero} ({nombre}) correcto")
            else:
                logger.warning(f"⚠ Criterio {numero} ({nombre}) no se cumple")
            informes.append(informe)
        return {
            'suite': 'rapida' if self.rapido else 'completa',
            'ok': all(i['ok'] for i in informes),
            'criterios': informes
        }

    def grabar_fixtures(self, informe: Dict, directorio: Optional[str] = None) -> str:
        """Escribe el informe sin tiempos como fixture de regresión."""
        directorio = directorio or config.FIXTURES_DIR
        os.makedirs(directorio, exist_ok=True)
        ruta = os.path.join(directorio, FIXTURE_SUITE)
        with open(ruta, 'w', encoding='utf-8') as f:
            json.dump(_sin_tiempos(informe), f, indent=2, ensure_ascii=False, sort_keys=True)
        logger.info(f"✓ Fixtures guardados en {ruta}")
        return ruta

    def comparar_fixtures(self, informe: Dict, ruta: str) -> Dict:
        """Compara el informe con uno guardado, ignorando elapsed_ms."""
        return comparar_con_archivo(informe, ruta)


def diferencias(actual, guardado, ruta: str = '') -> List[str]:
    """Rutas (a.b[2].c) donde dos informes JSON difieren."""
    if isinstance(actual, dict) and isinstance(guardado, dict):
        salida = []
        for clave in sorted(set(actual) | set(guardado)):
            salida += diferencias(actual.get(clave), guardado.get(clave),
                                  f"{ruta}.{clave}" if ruta else str(clave))
        return salida
    if isinstance(actual, list) and isinstance(guardado, list) and len(actual) == len(guardado):
        salida = []
        for k, (x, y) in enumerate(zip(actual, guardado)):
            salida += diferencias(x, y, f"{ruta}[{k}]")
        return salida
    return [] if actual == guardado else [ruta or '.']


def comparar_con_archivo(informe: Dict, ruta: str) -> Dict:
    """Compara un informe con el JSON guardado en `ruta`, sin los campos elapsed_ms."""
    with open(ruta, 'r', encoding='utf-8') as f:
        guardado = _sin_tiempos(json.load(f))
    actual = json.loads(json.dumps(_sin_tiempos(informe), sort_keys=True))
    cambios = diferencias(actual, guardado)
    if cambios:
        logger.warning(f"El informe difiere del guardado en {ruta}: {cambios[:10]}")
    return {'ok': not cambios, 'diferencias': cambios}


__all__ = ['SistemaVerificacion', 'INVARIANTES_ESPERADOS', 'diferencias', 'comparar_con_archivo']
