"""
Línea de comandos del motor de conteo de polinomios de Kac.

Subcomandos:
- kac            polinomio de Kac de un vector de dimensión (o tabla hasta una cota)
- count          soluciones y absolutamente indescomponibles sobre un cuerpo
- volume         volumen de pila o volumen bigraduado
- nil-volume     volumen de pares nilpotentes
- nil-check      identidad exponencial y recuperación de A
- stratum-check  estratos de Jordan
- torsion-check  identidades de partición y factorización
- euler          forma de Euler e invariantes de dos clases
- suite          batería de aceptación completa

El informe JSON se escribe en stdout; el resumen legible y los logs van a
stderr. Códigos de salida: 0 correcto, 1 comprobación fallida, 2 error de
validación, 3 límite de recursos, 4 error interno.
"""

import argparse
import json
import logging
import math
import os
import sys
import time
from dataclasses import dataclass, field as campo_dc
from typing import Dict, List, Optional, Sequence, Tuple

import pandas as pd
from colorama import Fore, Style
from tabulate import tabulate

from algebra.cuerpos import fraccion_a_texto
from algebra.enumeracion import (
    JordanType, count_abs_indec, count_abs_indec_by_side, count_solutions, nil_volume, nil_volume_T,
    stack_volume
)
from algebra.errores import (
    ErrorIndeterminado, ErrorInterno, ErrorKac, ErrorLimite, ErrorValidacion
)
from algebra.polinomios import (
    CONTEO_DIRECTO, INVERSION_NIL, cross_algebra_check, kac_polynomial, kac_table, presentacion_en
)
from algebra.presentaciones import CANONICA, TIPOS
from algebra.reticulo import LatticeContext, degree, euler, parse_kclass, rank, slope, sym
from algebra.series import nil_exp_check, recovery_check, stratum_check, volume_series
from algebra.torsion import bigraded_volume, check_factorization, partition_check, side_report
from config import config, configurar_logging, validar_configuracion
from sistema_verificacion import SistemaVerificacion, comparar_con_archivo
from utils.log_manager import log_manager

SALIDA_OK = 0
SALIDA_FALLO = 1
SALIDA_VALIDACION = 2
SALIDA_LIMITE = 3
SALIDA_INTERNO = 4

logger = logging.getLogger('kac.cli')

COMANDOS = ('kac', 'count', 'volume', 'nil-volume', 'nil-check', 'stratum-check',
            'torsion-check', 'euler', 'suite')


# ---------------------------------------------------------------------------
# Lectura de argumentos
# ---------------------------------------------------------------------------

def lista_enteros(texto: Optional[str], campo: str) -> Tuple[int, ...]:
    """'2,3,5' → (2, 3, 5); la cadena vacía da la tupla vacía."""
    if texto is None or not texto.strip():
        return ()
    try:
        return tuple(int(x) for x in texto.split(','))
    except ValueError:
        raise ErrorValidacion(f"Se esperaba una lista de enteros separados por comas: '{texto}'",
                              campo=campo)


def leer_jordan(texto: str) -> JordanType:
    """'0,0,0,0|1,0,0,0' → JordanType con dos partes."""
    if not texto:
        raise ErrorValidacion("Falta el tipo de Jordan (--jordan)", campo='jordan')
    return JordanType(tuple(lista_enteros(parte, 'jordan') for parte in texto.split('|')))


@dataclass
class RunConfig:
    """Configuración de una ejecución, validada antes de cualquier conteo."""
    comando: str
    algebra: str = CANONICA
    p: Tuple[int, ...] = (2, 2)
    lambdas: Tuple[int, ...] = ()
    dim: Tuple[int, ...] = ()
    bound: Tuple[int, ...] = ()
    field: Optional[int] = None
    fields: Tuple[int, ...] = ()
    confirm: Tuple[int, ...] = ()
    d1: Tuple[int, ...] = ()
    d2: Tuple[int, ...] = ()
    jordan: Optional[JordanType] = None
    x: Optional[str] = None
    y: Optional[str] = None
    workers: Optional[int] = None
    cap: Optional[int] = None
    out: Optional[str] = None
    comparar: Optional[str] = None
    record: bool = False
    opciones_extra: Dict = campo_dc(default_factory=dict)

    @classmethod
    def desde_argumentos(cls, args: argparse.Namespace) -> 'RunConfig':
        return cls(
            comando=args.comando,
            algebra=getattr(args, 'algebra', CANONICA),
            p=lista_enteros(getattr(args, 'p', '2,2'), 'p'),
            lambdas=lista_enteros(getattr(args, 'lambdas', ''), 'lambda'),
            dim=lista_enteros(getattr(args, 'dim', None), 'dim'),
            bound=lista_enteros(getattr(args, 'bound', None), 'bound'),
            field=getattr(args, 'field', None),
            fields=lista_enteros(getattr(args, 'fields', None), 'fields'),
            confirm=lista_enteros(getattr(args, 'confirm', None), 'confirm'),
            d1=lista_enteros(getattr(args, 'd1', None), 'd1'),
            d2=lista_enteros(getattr(args, 'd2', None), 'd2'),
            jordan=leer_jordan(args.jordan) if getattr(args, 'jordan', None) else None,
            x=getattr(args, 'x', None),
            y=getattr(args, 'y', None),
            workers=args.workers,
            cap=args.cap,
            out=args.out,
            comparar=args.comparar,
            record=getattr(args, 'record', False),
            opciones_extra={k: getattr(args, k) for k in ('rapido', 'criterios', 'solo_T', 'cruzado',
                                                          'lados', 'desde_nil') if hasattr(args, k)}
        )

    @property
    def opciones(self) -> Dict:
        return {'workers': self.workers, 'cap': self.cap}

    def cuerpos(self) -> List[int]:
        """Órdenes de cuerpo que usará la ejecución."""
        if self.fields:
            return list(self.fields) + list(self.confirm)
        return [self.field] if self.field else []

    def validar(self):
        """
        Construye la presentación sobre cada cuerpo pedido y comprueba las
        dimensiones; cualquier problema se informa antes de contar.

        Raises:
            ErrorValidacion: con el campo que falla
        """
        if self.comando not in COMANDOS:
            raise ErrorValidacion(f"Subcomando desconocido '{self.comando}'", campo='comando')
        if self.workers is not None and self.workers < 1:
            raise ErrorValidacion(f"--workers debe ser ≥ 1: {self.workers}", campo='workers')
        if self.cap is not None and self.cap < 1:
            raise ErrorValidacion(f"--cap debe ser ≥ 1: {self.cap}", campo='cap')
        if self.out and os.path.splitext(self.out)[1].lower() not in ('.json', '.csv'):
            raise ErrorValidacion(f"--out debe terminar en .json o .csv: {self.out}", campo='out')
        if self.comando in ('euler', 'suite'):
            LatticeContext(self.p)
            return

        necesita = {
            'kac': ('fields',), 'count': ('dim', 'field'), 'volume': ('field',),
            'nil-volume': ('dim', 'field'), 'nil-check': ('bound', 'field'),
            'stratum-check': ('dim', 'field', 'jordan'), 'torsion-check': ('dim', 'fields')
        }[self.comando]
        for nombre in necesita:
            if not getattr(self, nombre):
                raise ErrorValidacion(f"El subcomando {self.comando} necesita --{nombre}", campo=nombre)
        if self.comando == 'kac' and not (self.dim or self.bound):
            raise ErrorValidacion("El subcomando kac necesita --dim o --bound", campo='dim')
        if self.comando == 'volume' and not (self.dim or self.bound) and not (self.d1 and self.d2):
            raise ErrorValidacion("El subcomando volume necesita --dim, --bound o --d1 y --d2", campo='dim')

        for q in self.cuerpos():
            pres = presentacion_en(self.algebra, self.p, self.lambdas, q)
            for nombre in ('dim', 'bound', 'd1', 'd2'):
                valor = getattr(self, nombre)
                if valor:
                    pres.validar_dimension(valor)
            if self.jordan is not None and self.jordan.dimension(pres.n_vertices) != self.dim:
                raise ErrorValidacion(f"El tipo de Jordan {self.jordan} no suma la dimensión {self.dim}",
                                      campo='jordan')


# ---------------------------------------------------------------------------
# Subcomandos
# ---------------------------------------------------------------------------

def _algebra(rc: RunConfig, q: int) -> Dict:
    return {'algebra': rc.algebra, 'p': list(rc.p), 'lambda': list(rc.lambdas), 'q': q}


def comando_kac(rc: RunConfig) -> Dict:
    origen = INVERSION_NIL if rc.opciones_extra.get('desde_nil') else CONTEO_DIRECTO
    if rc.bound:
        tabla = kac_table(rc.algebra, rc.p, rc.lambdas, rc.bound, rc.fields, origen, **rc.opciones)
        informe = {'algebra': rc.algebra, 'p': list(rc.p), 'lambda': list(rc.lambdas),
                   'bound': list(rc.bound), 'ok': True, 'tabla': json.loads(tabla.to_json(orient='records'))}
        if rc.opciones_extra.get('cruzado'):
            cruce = cross_algebra_check(rc.p, rc.lambdas, rc.bound, rc.fields, **rc.opciones)
            informe['cruce'] = cruce
        return informe
    informe = kac_polynomial(rc.algebra, rc.p, rc.lambdas, rc.dim, rc.fields, rc.confirm, origen,
                             **rc.opciones)
    informe.pop('poly')
    return {'algebra': rc.algebra, 'p': list(rc.p), 'lambda': list(rc.lambdas), **informe}


def comando_count(rc: RunConfig) -> Dict:
    pres = presentacion_en(rc.algebra, rc.p, rc.lambdas, rc.field)
    soluciones = count_solutions(pres, rc.dim, **rc.opciones)
    valor = count_abs_indec(pres, rc.dim, **rc.opciones)
    a_T, a_F = count_abs_indec_by_side(pres, rc.dim, **rc.opciones)
    return {**_algebra(rc, rc.field), 'dim': list(rc.dim), 'value': valor, 'solutions': soluciones,
            'A_T': a_T, 'A_F': a_F, 'ok': True}


def comando_volume(rc: RunConfig) -> Dict:
    pres = presentacion_en(rc.algebra, rc.p, rc.lambdas, rc.field)
    if rc.d1 and rc.d2:
        volumen = bigraded_volume(pres, rc.d1, rc.d2, ambiente=rc.dim or None, **rc.opciones)
        return {**_algebra(rc, rc.field), **volumen.to_dict(), 'ok': True}
    if rc.bound:
        serie = volume_series(pres, rc.bound, **rc.opciones)
        return {**_algebra(rc, rc.field), **serie.to_dict(), 'ok': True}
    return {**_algebra(rc, rc.field), 'dim': list(rc.dim),
            'value': fraccion_a_texto(stack_volume(pres, rc.dim, **rc.opciones)),
            'solutions': count_solutions(pres, rc.dim, **rc.opciones), 'ok': True}


def comando_nil_volume(rc: RunConfig) -> Dict:
    pres = presentacion_en(rc.algebra, rc.p, rc.lambdas, rc.field)
    solo_T = rc.opciones_extra.get('solo_T', False)
    valor = (nil_volume_T if solo_T else nil_volume)(pres, rc.dim, **rc.opciones)
    return {**_algebra(rc, rc.field), 'dim': list(rc.dim), 'solo_T': solo_T,
            'value': fraccion_a_texto(valor), 'ok': True}


def comando_nil_check(rc: RunConfig) -> Dict:
    pres = presentacion_en(rc.algebra, rc.p, rc.lambdas, rc.field)
    exp = nil_exp_check(pres, rc.bound, **rc.opciones)
    recuperacion = recovery_check(pres, rc.bound, **rc.opciones)
    return {**_algebra(rc, rc.field), 'bound': list(rc.bound), 'ok': exp['ok'] and recuperacion['ok'],
            'exp': exp, 'recuperacion': recuperacion}


def comando_stratum_check(rc: RunConfig) -> Dict:
    pres = presentacion_en(rc.algebra, rc.p, rc.lambdas, rc.field)
    return {**_algebra(rc, rc.field), **stratum_check(pres, rc.dim, rc.jordan, **rc.opciones)}


def comando_torsion_check(rc: RunConfig) -> Dict:
    filas = []
    for q in rc.fields:
        pres = presentacion_en(rc.algebra, rc.p, rc.lambdas, q)
        particion = partition_check(pres, rc.dim, **rc.opciones)
        factorizacion = check_factorization(pres, rc.dim, **rc.opciones)
        fila = {'q': q, 'particion': particion, 'factorizacion': factorizacion,
                'ok': particion['ok'] and factorizacion['ok']}
        if rc.opciones_extra.get('lados'):
            fila['lados'] = side_report(pres, rc.dim, **rc.opciones)
        filas.append(fila)
    return {'algebra': rc.algebra, 'p': list(rc.p), 'lambda': list(rc.lambdas), 'dim': list(rc.dim),
            'ok': all(f['ok'] for f in filas), 'cuerpos': filas}


def _texto_pendiente(x) -> Optional[str]:
    try:
        valor = slope(x)
    except ErrorValidacion:
        return None
    if isinstance(valor, float) and math.isinf(valor):
        return 'inf' if valor > 0 else '-inf'
    return fraccion_a_texto(valor)


def comando_euler(rc: RunConfig) -> Dict:
    if not rc.x or not rc.y:
        raise ErrorValidacion("El subcomando euler necesita --x y --y", campo='x')
    ctx = LatticeContext(rc.p)
    x, y = parse_kclass(ctx, rc.x), parse_kclass(ctx, rc.y)
    return {
        'p': list(rc.p),
        'x': x.to_dict(),
        'y': y.to_dict(),
        'euler': euler(x, y),
        'sym': sym(x, y),
        'rank': [rank(x), rank(y)],
        'degree': [degree(x), degree(y)],
        'slope': [_texto_pendiente(x), _texto_pendiente(y)],
        'kappa': ctx.kappa,
        'genus': fraccion_a_texto(ctx.genus),
        'ok': True
    }


def comando_suite(rc: RunConfig) -> Dict:
    sistema = SistemaVerificacion(rapido=rc.opciones_extra.get('rapido', False),
                                  workers=rc.workers, cap=rc.cap)
    seleccion = list(lista_enteros(rc.opciones_extra.get('criterios'), 'criterios')) or None
    if seleccion and any(not 1 <= k <= len(sistema.criterios) for k in seleccion):
        raise ErrorValidacion(f"Criterios fuera de rango: {seleccion}", campo='criterios')
    informe = sistema.ejecutar(seleccion)
    if rc.record:
        informe['fixture'] = sistema.grabar_fixtures(informe)
    return informe


EJECUTORES = {
    'kac': comando_kac,
    'count': comando_count,
    'volume': comando_volume,
    'nil-volume': comando_nil_volume,
    'nil-check': comando_nil_check,
    'stratum-check': comando_stratum_check,
    'torsion-check': comando_torsion_check,
    'euler': comando_euler,
    'suite': comando_suite,
}


def run(rc: RunConfig) -> Tuple[int, Dict]:
    """
    Ejecuta una configuración y traduce el resultado a código de salida.

    Returns:
        (código de salida, informe JSON)
    """
    inicio = time.perf_counter()
    ejecucion = log_manager.set_ejecucion()
    logger.info(f"Ejecución {ejecucion}: {rc.comando} ({rc.algebra}, p = {rc.p})")
    try:
        rc.validar()
        informe = {'comando': rc.comando, **EJECUTORES[rc.comando](rc)}
        if rc.comparar:
            informe['comparacion'] = comparar_con_archivo(informe, rc.comparar)
            informe['ok'] = informe['ok'] and informe['comparacion']['ok']
        codigo = SALIDA_OK if informe.get('ok', True) else SALIDA_FALLO
    except (ErrorValidacion, ErrorIndeterminado) as e:
        logger.warning(f"Entrada rechazada: {e}")
        informe, codigo = {'ok': False, 'error': e.to_dict()}, SALIDA_VALIDACION
    except ErrorLimite as e:
        logger.warning(f"Límite de recursos: {e}")
        informe, codigo = {'ok': False, 'error': e.to_dict()}, SALIDA_LIMITE
    except ErrorInterno as e:
        logger.error(f"Error interno: {e}", exc_info=True)
        informe, codigo = {'ok': False, 'error': e.to_dict()}, SALIDA_INTERNO
    except ErrorKac as e:
        logger.error(f"Error interno: {e}", exc_info=True)
        informe, codigo = {'ok': False, 'error': {'tipo': 'interno', 'mensaje': str(e)}}, SALIDA_INTERNO
    except Exception as e:
        logger.error(f"Error inesperado: {e!r}", exc_info=True)
        informe, codigo = {'ok': False, 'error': {'tipo': 'interno', 'mensaje': repr(e)}}, SALIDA_INTERNO
    finally:
        log_manager.clear_ejecucion()
    informe = {'comando': rc.comando, **informe,
               'elapsed_ms': int((time.perf_counter() - inicio) * 1000)}
    return codigo, informe


# ---------------------------------------------------------------------------
# Salida
# ---------------------------------------------------------------------------

def a_dataframe(informe: Dict) -> pd.DataFrame:
    """Tabla plana del informe: la primera lista de registros que contenga, o una fila."""
    for clave in ('tabla', 'criterios', 'cuerpos', 'filas', 'valores', 'pares', 'samples'):
        valor = informe.get(clave)
        if isinstance(valor, list) and valor and isinstance(valor[0], dict):
            return pd.json_normalize(valor)
    return pd.json_normalize([{k: v for k, v in informe.items() if not isinstance(v, (list, dict))}])


def escribir_salida(informe: Dict, ruta: str):
    directorio = os.path.dirname(os.path.abspath(ruta))
    os.makedirs(directorio, exist_ok=True)
    if ruta.lower().endswith('.csv'):
        a_dataframe(informe).to_csv(ruta, index=False)
    else:
        with open(ruta, 'w', encoding='utf-8') as f:
            json.dump(informe, f, indent=2, ensure_ascii=False)


def imprimir_resumen(codigo: int, informe: Dict):
    """Resumen legible en stderr."""
    if 'criterios' in informe:
        filas = [[c['criterio'], c['nombre'], '✓' if c['ok'] else '✗', c.get('elapsed_ms', '')]
                 for c in informe['criterios']]
        print(tabulate(filas, headers=['#', 'Criterio', 'Estado', 'ms'], tablefmt='pretty'),
              file=sys.stderr)
    elif 'tabla' in informe:
        print(a_dataframe(informe).to_string(index=False), file=sys.stderr)
    else:
        filas = [[k, v] for k, v in informe.items() if not isinstance(v, (list, dict))]
        print(tabulate(filas, headers=['Campo', 'Valor'], tablefmt='pretty'), file=sys.stderr)

    if codigo == SALIDA_OK:
        print(f"{Fore.GREEN}✓ {informe['comando']} correcto{Style.RESET_ALL}", file=sys.stderr)
    elif codigo == SALIDA_FALLO:
        print(f"{Fore.YELLOW}⚠ {informe['comando']}: alguna comprobación no se cumple{Style.RESET_ALL}",
              file=sys.stderr)
    else:
        error = informe.get('error', {})
        print(f"{Fore.RED}✗ {error.get('tipo', 'error')}: {error.get('mensaje', '')}{Style.RESET_ALL}",
              file=sys.stderr)


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def crear_parser() -> argparse.ArgumentParser:
    comun = argparse.ArgumentParser(add_help=False)
    comun.add_argument('--algebra', choices=TIPOS, default=CANONICA, help='Tipo de álgebra')
    comun.add_argument('--p', default='2,2', help='Pesos separados por comas (p_1,…,p_N)')
    comun.add_argument('--lambda', dest='lambdas', default='',
                       help='λ_3,…,λ_N como índices de elemento del cuerpo')
    comun.add_argument('--workers', type=int, default=None, help='Trabajadores de enumeración')
    comun.add_argument('--cap', type=int, default=None, help='Límite del espacio de tuplas')
    comun.add_argument('--out', help='Archivo de salida .json o .csv')
    comun.add_argument('--comparar', help='Informe JSON guardado con el que comparar')
    comun.add_argument('--log-level', default=None,
                       choices=['DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'],
                       help='Nivel de log en consola')

    parser = argparse.ArgumentParser(description='Conteo exacto de polinomios de Kac')
    sub = parser.add_subparsers(dest='comando', required=True)

    kac = sub.add_parser('kac', parents=[comun], help='Polinomio de Kac')
    kac.add_argument('--dim', help='Vector de dimensión')
    kac.add_argument('--bound', help='Cota: tabla de todos los d ≤ cota')
    kac.add_argument('--fields', required=True, help='Órdenes de cuerpo de muestreo')
    kac.add_argument('--confirm', help='Órdenes de cuerpo de confirmación')
    kac.add_argument('--cruzado', action='store_true', help='Comparar canónica y squid (con --bound)')
    kac.add_argument('--desde-nil', dest='desde_nil', action='store_true',
                     help='Muestras recuperadas de la serie de pares nilpotentes')

    count = sub.add_parser('count', parents=[comun], help='Soluciones y A_d(q)')
    count.add_argument('--dim', required=True)
    count.add_argument('--field', type=int, required=True)

    volume = sub.add_parser('volume', parents=[comun], help='Volumen de pila o bigraduado')
    volume.add_argument('--dim')
    volume.add_argument('--bound', help='Cota: serie de volúmenes de d ≤ cota')
    volume.add_argument('--d1')
    volume.add_argument('--d2')
    volume.add_argument('--field', type=int, required=True)

    nil = sub.add_parser('nil-volume', parents=[comun], help='Volumen de pares nilpotentes')
    nil.add_argument('--dim', required=True)
    nil.add_argument('--field', type=int, required=True)
    nil.add_argument('--solo-T', dest='solo_T', action='store_true', help='Sólo módulos en T')

    nil_check = sub.add_parser('nil-check', parents=[comun], help='Identidad exponencial')
    nil_check.add_argument('--bound', required=True)
    nil_check.add_argument('--field', type=int, required=True)

    estrato = sub.add_parser('stratum-check', parents=[comun], help='Estrato de Jordan')
    estrato.add_argument('--dim', required=True)
    estrato.add_argument('--field', type=int, required=True)
    estrato.add_argument('--jordan', required=True, help="Partes separadas por '|', p. ej. 0,0,0,0|1,0,0,0")

    torsion = sub.add_parser('torsion-check', parents=[comun], help='Identidades del par de torsión')
    torsion.add_argument('--dim', required=True)
    torsion.add_argument('--fields', required=True)
    torsion.add_argument('--lados', action='store_true', help='Incluir el lado de cada clase')

    euler_p = sub.add_parser('euler', parents=[comun], help='Forma de Euler de dos clases')
    euler_p.add_argument('--x', required=True, help="Clase, p. ej. '2e - e_1_0 + delta'")
    euler_p.add_argument('--y', required=True)

    suite = sub.add_parser('suite', parents=[comun], help='Batería de aceptación')
    suite.add_argument('--rapido', action='store_true', help='Batería reducida')
    suite.add_argument('--record', action='store_true', help='Guardar fixtures de regresión')
    suite.add_argument('--criterios', help='Números de criterio separados por comas')

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Función principal de la línea de comandos"""
    args = crear_parser().parse_args(argv)
    configurar_logging(console_level=args.log_level)

    try:
        validar_configuracion()
        rc = RunConfig.desde_argumentos(args)
    except (ErrorValidacion, ValueError) as e:
        error = e.to_dict() if isinstance(e, ErrorValidacion) else {'tipo': 'validacion', 'mensaje': str(e)}
        informe = {'comando': args.comando, 'ok': False, 'error': error}
        print(json.dumps(informe, indent=2, ensure_ascii=False))
        imprimir_resumen(SALIDA_VALIDACION, informe)
        return SALIDA_VALIDACION

    config.preparar_directorios()
    codigo, informe = run(rc)
    print(json.dumps(informe, indent=2, ensure_ascii=False))
    if rc.out and codigo in (SALIDA_OK, SALIDA_FALLO):
        escribir_salida(informe, rc.out)
    imprimir_resumen(codigo, informe)
    return codigo


if __name__ == '__main__':
    sys.exit(main())
