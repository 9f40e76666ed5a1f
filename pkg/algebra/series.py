"""
Series graduadas truncadas sobre vectores de dimensión y las
identidades entre volúmenes nilpotentes y conteos de Kac.

Los coeficientes son racionales exactos para un q fijo; la truncación es
componente a componente.
"""

import logging
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from algebra.cuerpos import Field, fraccion_a_texto
from algebra.enumeracion import (
    JordanType, contar_epimorfismos, count_abs_indec, count_abs_indec_by_side, gl_order,
    iterate_solutions, nil_pairs_by_type, nil_volume, nil_volume_T, sobre_cuerpo, stack_volume,
    vectores_hasta
)
from algebra.errores import ErrorInterno, ErrorValidacion
from algebra.presentaciones import AlgebraPresentation, extend_presentation
from algebra.reticulo import KClass, euler, psi_inverse, sym
from algebra.torsion import Side, indec_side, split_dims
from utils.log_manager import log_execution_time

logger = logging.getLogger(__name__)

Vector = Tuple[int, ...]


class GradedSeries:
    """
    Serie Σ c_d z^d truncada en la cota B.

    El término constante vive en la clave del vector nulo.
    """

    def __init__(self, bound: Sequence[int], coeficientes: Optional[Dict[Vector, Fraction]] = None):
        self.bound: Vector = tuple(int(x) for x in bound)
        self.coeficientes: Dict[Vector, Fraction] = {}
        for d, c in (coeficientes or {}).items():
            d = tuple(int(x) for x in d)
            if len(d) != len(self.bound):
                raise ErrorValidacion(f"Vector {d} de longitud distinta a la cota {self.bound}",
                                      campo='serie')
            if self._dentro(d) and c != 0:
                self.coeficientes[d] = Fraction(c)

    @property
    def cero(self) -> Vector:
        return (0,) * len(self.bound)

    def _dentro(self, d: Vector) -> bool:
        return all(0 <= x <= b for x, b in zip(d, self.bound))

    def _compatible(self, otra: 'GradedSeries'):
        if self.bound != otra.bound:
            raise ErrorValidacion(f"Cotas distintas {self.bound} y {otra.bound}", campo='serie')

    def __getitem__(self, d: Sequence[int]) -> Fraction:
        return self.coeficientes.get(tuple(d), Fraction(0))

    def constante(self) -> Fraction:
        return self[self.cero]

    def __eq__(self, otra):
        return (isinstance(otra, GradedSeries) and self.bound == otra.bound
                and self.coeficientes == otra.coeficientes)

    def __add__(self, otra: 'GradedSeries') -> 'GradedSeries':
        self._compatible(otra)
        suma = dict(self.coeficientes)
        for d, c in otra.coeficientes.items():
            suma[d] = suma.get(d, Fraction(0)) + c
        return GradedSeries(self.bound, suma)

    def __sub__(self, otra: 'GradedSeries') -> 'GradedSeries':
        return self + otra.escalar(-1)

    def escalar(self, c) -> 'GradedSeries':
        return GradedSeries(self.bound, {d: Fraction(c) * v for d, v in self.coeficientes.items()})

    def __mul__(self, otra: 'GradedSeries') -> 'GradedSeries':
        self._compatible(otra)
        producto: Dict[Vector, Fraction] = {}
        for a, ca in self.coeficientes.items():
            for b, cb in otra.coeficientes.items():
                d = tuple(x + y for x, y in zip(a, b))
                if self._dentro(d):
                    producto[d] = producto.get(d, Fraction(0)) + ca * cb
        return GradedSeries(self.bound, producto)

    def grado_maximo(self) -> int:
        return sum(self.bound)

    def to_dict(self):
        return {
            'bound': list(self.bound),
            'coeficientes': [{'dim': list(d), 'value': fraccion_a_texto(c)}
                             for d, c in sorted(self.coeficientes.items())]
        }

    def __repr__(self):
        return f"GradedSeries(bound={self.bound}, términos={len(self.coeficientes)})"


def series_exp(s: GradedSeries) -> GradedSeries:
    """exp(s) = Σ s^k/k!; requiere término constante nulo."""
    if s.constante() != 0:
        raise ErrorValidacion("exp requiere término constante nulo", campo='serie')
    resultado = GradedSeries(s.bound, {s.cero: Fraction(1)})
    potencia = GradedSeries(s.bound, {s.cero: Fraction(1)})
    factorial = 1
    # Cada término de s tiene grado total ≥ 1
    for k in range(1, s.grado_maximo() + 1):
        potencia = potencia * s
        if not potencia.coeficientes:
            break
        factorial *= k
        resultado = resultado + potencia.escalar(Fraction(1, factorial))
    return resultado


def series_log(s: GradedSeries) -> GradedSeries:
    """log(s) = Σ (−1)^{k+1} (s−1)^k/k; requiere término constante 1."""
    if s.constante() != 1:
        raise ErrorValidacion("log requiere término constante 1", campo='serie')
    u = s - GradedSeries(s.bound, {s.cero: Fraction(1)})
    resultado = GradedSeries(s.bound)
    potencia = GradedSeries(s.bound, {s.cero: Fraction(1)})
    for k in range(1, s.grado_maximo() + 1):
        potencia = potencia * u
        if not potencia.coeficientes:
            break
        resultado = resultado + potencia.escalar(Fraction((-1) ** (k + 1), k))
    return resultado


# ---------------------------------------------------------------------------
# Series de volúmenes
# ---------------------------------------------------------------------------

def volume_series(pres: AlgebraPresentation, bound: Sequence[int], field: Optional[Field] = None,
                  **opciones) -> GradedSeries:
    """Σ vol(Rep_d) z^d para d ≤ bound."""
    pres = sobre_cuerpo(pres, field)
    bound = pres.validar_dimension(bound)
    return GradedSeries(bound, {d: stack_volume(pres, d, **opciones)
                                for d in vectores_hasta(bound, incluir_cero=True)})


def nil_series(pres: AlgebraPresentation, bound: Sequence[int], restringido: bool = True,
               field: Optional[Field] = None, **opciones) -> GradedSeries:
    """Σ vol(Nil_d) z^d; con restringido=True sólo cuentan módulos en T."""
    pres = sobre_cuerpo(pres, field)
    bound = pres.validar_dimension(bound)
    volumen = nil_volume_T if restringido else nil_volume
    return GradedSeries(bound, {d: volumen(pres, d, **opciones)
                                for d in vectores_hasta(bound, incluir_cero=True)})


def _conteo(pres: AlgebraPresentation, alpha: Vector, restringido: bool, **opciones) -> int:
    if restringido:
        return count_abs_indec_by_side(pres, alpha, **opciones)[0]
    return count_abs_indec(pres, alpha, **opciones)


def kac_exponent_series(pres: AlgebraPresentation, bound: Sequence[int], restringido: bool = True,
                        **opciones) -> GradedSeries:
    """Σ_{α, l} A_α(q^l)/(l(q^l − 1)) z^{lα} con lα ≤ bound."""
    bound = pres.validar_dimension(bound)
    F = pres.field
    terminos: Dict[Vector, Fraction] = {}
    for alpha in vectores_hasta(bound):
        l = 1
        while all(l * a <= b for a, b in zip(alpha, bound)):
            grande = extend_presentation(pres, l)
            valor = _conteo(grande, alpha, restringido, **opciones)
            if valor:
                ql = F.q ** l
                clave = tuple(l * a for a in alpha)
                terminos[clave] = terminos.get(clave, Fraction(0)) + Fraction(valor, l * (ql - 1))
            l += 1
    return GradedSeries(bound, terminos)


def _comparar(izquierda: GradedSeries, derecha: GradedSeries) -> Tuple[bool, List[Dict]]:
    filas, ok = [], True
    for d in vectores_hasta(izquierda.bound, incluir_cero=True):
        igual = izquierda[d] == derecha[d]
        ok &= igual
        filas.append({'dim': list(d), 'lhs': fraccion_a_texto(izquierda[d]),
                      'rhs': fraccion_a_texto(derecha[d]), 'ok': igual})
    return ok, filas


@log_execution_time
def nil_exp_check(pres: AlgebraPresentation, bound: Sequence[int], field: Optional[Field] = None,
                  **opciones) -> Dict:
    """
    Compara Σ vol(Nil_d) z^d con exp(Σ A_α(q^l)/(l(q^l−1)) z^{lα}).

    La comparación restringida a T decide 'ok'; la de la categoría completa
    se informa aparte en 'ok_completo'.
    """
    pres = sobre_cuerpo(pres, field)
    bound = pres.validar_dimension(bound)

    ok_T, filas_T = _comparar(nil_series(pres, bound, True, **opciones),
                              series_exp(kac_exponent_series(pres, bound, True, **opciones)))
    ok_todo, filas_todo = _comparar(nil_series(pres, bound, False, **opciones),
                                    series_exp(kac_exponent_series(pres, bound, False, **opciones)))
    if not ok_T:
        logger.warning(f"Identidad exponencial en T fallida para B = {bound}, q = {pres.field.q}")
    if not ok_todo:
        logger.info(f"Identidad exponencial en la categoría completa no se cumple para B = {bound}")
    return {
        'bound': list(bound),
        'q': pres.field.q,
        'ok': ok_T,
        'ok_completo': ok_todo,
        'coeficientes_T': filas_T,
        'coeficientes_completo': filas_todo
    }


def recover_A_from_nil(pres: AlgebraPresentation, bound: Sequence[int], restringido: bool = False,
                       field: Optional[Field] = None, **opciones) -> Dict[Vector, int]:
    """
    A_d(q) para cada d ≤ bound a partir del logaritmo de la serie nilpotente.

    El coeficiente del log en z^β es Σ_{l | β} A_{β/l}(q^l)/(l(q^l−1)); los
    términos con l ≥ 2 se obtienen recursivamente sobre F_{q^l}.

    Raises:
        ErrorInterno: si algún valor recuperado no es entero
    """
    pres = sobre_cuerpo(pres, field)
    bound = pres.validar_dimension(bound)
    memo: Dict[Tuple, Dict[Vector, int]] = {}

    def recuperar(p: AlgebraPresentation, cota: Vector) -> Dict[Vector, int]:
        clave = (p, cota)
        if clave in memo:
            return memo[clave]
        q = p.field.q
        logaritmo = series_log(nil_series(p, cota, restringido, **opciones))
        valores: Dict[Vector, int] = {}
        for beta in vectores_hasta(cota):
            c = logaritmo[beta]
            for l in range(2, max(beta) + 1):
                if any(b % l for b in beta):
                    continue
                sub = tuple(b // l for b in beta)
                externo = recuperar(extend_presentation(p, l), sub)[sub]
                c -= Fraction(externo, l * (q ** l - 1))
            valor = c * (q - 1)
            if valor.denominator != 1:
                logger.error(f"Valor recuperado no entero {valor} en d = {beta}, q = {q}")
                raise ErrorInterno(f"Recuperación no entera {valor} para d = {beta} sobre F_{q}")
            valores[beta] = int(valor)
        memo[clave] = valores
        return valores

    return recuperar(pres, bound)


def recovery_check(pres: AlgebraPresentation, bound: Sequence[int], field: Optional[Field] = None,
                   **opciones) -> Dict:
    """Compara A recuperado desde Nil con el conteo directo, en T y en la categoría completa."""
    pres = sobre_cuerpo(pres, field)
    bound = pres.validar_dimension(bound)
    completo = recover_A_from_nil(pres, bound, False, **opciones)
    en_T = recover_A_from_nil(pres, bound, True, **opciones)
    filas, ok = [], True
    for d in vectores_hasta(bound):
        directo_T, _ = count_abs_indec_by_side(pres, d, **opciones)
        directo = count_abs_indec(pres, d, **opciones)
        igual = completo[d] == directo and en_T[d] == directo_T
        ok &= igual
        filas.append({'dim': list(d), 'recuperado': completo[d], 'directo': directo,
                      'recuperado_T': en_T[d], 'directo_T': directo_T, 'ok': igual})
        if not igual:
            logger.warning(f"Recuperación distinta del conteo directo en d = {d}: {filas[-1]}")
    return {'bound': list(bound), 'q': pres.field.q, 'ok': ok, 'valores': filas}


# ---------------------------------------------------------------------------
# Estratos de Jordan
# ---------------------------------------------------------------------------

def rank_r(parts: Sequence[KClass]) -> int:
    """
    −{Σ_i (i−1)⟨α_i,α_i⟩ + Σ_{i<j} i·(α_i,α_j)} + Σ_{i<j} ⟨α_i,α_j⟩,
    con índices desde 1.
    """
    parts = list(parts)
    primero = sum((i - 1) * euler(a, a) for i, a in enumerate(parts, start=1))
    segundo = sum(i * sym(parts[i - 1], parts[j - 1])
                  for i in range(1, len(parts) + 1) for j in range(i + 1, len(parts) + 1))
    # ⟨α_i, α_j⟩ con i < j: orientación de euler_mod (columnas de C, d_t·e_s en las flechas)
    tercero = sum(euler(parts[i], parts[j])
                  for i in range(len(parts)) for j in range(i + 1, len(parts)))
    return -(primero + segundo) + tercero


def _modulos_T(pres: AlgebraPresentation, d: Vector, **opciones) -> List:
    cap = opciones.get('cap')
    cap_end = opciones.get('cap_end')
    lados: Dict[Vector, Side] = {}
    return [M for M in iterate_solutions(pres, d, cap=cap)
            if not any(split_dims(pres, M, cap=cap_end, cache=lados)[0])]


def chain_volume(pres: AlgebraPresentation, dims: Sequence[Vector], **opciones) -> Fraction:
    """
    Volumen de las cadenas Q_1 ↠ Q_2 ↠ … ↠ Q_s con Q_k en T de dimensión dims[k]:
    #{(Q_k, epimorfismos)} / ∏ |GL_{dims[k]}|.
    """
    q = pres.field.q
    modulos = [_modulos_T(pres, tuple(d), **opciones) for d in dims]
    cap_end = opciones.get('cap_end')

    # pesos[k][i]: cadenas que empiezan en el i-ésimo módulo del nivel k
    pesos = [1] * len(modulos[-1])
    for k in range(len(modulos) - 2, -1, -1):
        pesos = [sum(contar_epimorfismos(Q, R, cap_end) * w
                     for R, w in zip(modulos[k + 1], pesos) if w)
                 for Q in modulos[k]]
    orden = 1
    for d in dims:
        orden *= gl_order(d, q)
    return Fraction(sum(pesos), orden)


@log_execution_time
def stratum_check(pres: AlgebraPresentation, d: Sequence[int], tipo: JordanType,
                  field: Optional[Field] = None, **opciones) -> Dict:
    """
    vol(Nil^T con tipo de Jordan dado) frente a q^{rank_r}·vol(cadenas).

    Raises:
        ErrorValidacion: tipo incompatible con d o con partes fuera de T
    """
    pres = sobre_cuerpo(pres, field)
    d = pres.validar_dimension(d)
    if not tipo.partes or tipo.dimension() != d:
        raise ErrorValidacion(f"El tipo de Jordan {tipo} no suma la dimensión {d}", campo='jordan')
    clases = [psi_inverse(pres, a) for a in tipo.partes]
    for a, c in zip(tipo.partes, clases):
        if any(a) and indec_side(c) != Side.T:
            raise ErrorValidacion(
                f"La parte {a} tiene clase en F[1]; la identidad de estratos sólo se prueba dentro de T",
                campo='jordan')

    q = pres.field.q
    pares = nil_pairs_by_type(pres, d, solo_T=True, **opciones).get(tipo, 0)
    izquierda = Fraction(pares, gl_order(d, q))

    # Q_k = Im θ^{k−1}/Im θ^k tiene dimensión Σ_{i≥k} α_i
    colas = []
    for k in range(len(tipo.partes)):
        cola = [0] * len(d)
        for a in tipo.partes[k:]:
            cola = [x + y for x, y in zip(cola, a)]
        colas.append(tuple(cola))
    r = rank_r(clases)
    cadenas = chain_volume(pres, colas, **opciones)
    derecha = Fraction(q) ** r * cadenas
    ok = izquierda == derecha
    if not ok:
        logger.warning(f"Estrato {tipo} en d = {d}, q = {q}: {izquierda} != {derecha}")
    return {
        'dim': list(d),
        'q': q,
        'tipo': tipo.to_dict(),
        'rank_r': r,
        'lhs': fraccion_a_texto(izquierda),
        'vol_cadenas': fraccion_a_texto(cadenas),
        'rhs': fraccion_a_texto(derecha),
        'ok': ok
    }


__all__ = [
    'GradedSeries',
    'series_exp',
    'series_log',
    'volume_series',
    'nil_series',
    'kac_exponent_series',
    'nil_exp_check',
    'recover_A_from_nil',
    'recovery_check',
    'rank_r',
    'chain_volume',
    'stratum_check'
]
