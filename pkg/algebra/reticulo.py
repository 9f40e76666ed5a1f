"""
Retículo de Grothendieck N_p de la recta proyectiva ponderada.

Contiene la forma de Euler por tabla de generadores, los invariantes
numéricos (rango, grado, pendiente, κ, género), las clases de los
sumandos del tilting de cada presentación, la matriz de Cartan y la
identificación ψ entre vectores de dimensión y clases.

Forma normal: e_{i,0} se elimina mediante e_{i,0} = δ − Σ_{s≥1} e_{i,s},
de modo que una clase queda fijada por (e, δ, b_{i,s} con s ≥ 1).
"""

import logging
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache, reduce
from typing import Dict, Hashable, List, Sequence, Tuple, Union

import numpy as np

from algebra.cuerpos import inversa_racional, mat_rank
from algebra.errores import ErrorInterno, ErrorValidacion
from algebra.presentaciones import CANONICA, SQUID, AlgebraPresentation, etiqueta_vertice

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LatticeContext:
    p: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, 'p', tuple(int(x) for x in self.p))
        if len(self.p) < 2 or any(x < 2 for x in self.p):
            raise ErrorValidacion(f"Pesos inválidos {self.p}", campo='p')

    @property
    def n(self) -> int:
        return len(self.p)

    @cached_property
    def p_lcm(self) -> int:
        return reduce(lambda a, b: a * b // math.gcd(a, b), self.p)

    @cached_property
    def kappa(self) -> int:
        return self.p_lcm * (self.n - 2) - sum(self.p_lcm // pi for pi in self.p)

    @cached_property
    def genus(self) -> Fraction:
        return 1 + Fraction(self.kappa, 2)

    @cached_property
    def desplazamientos(self) -> Tuple[int, ...]:
        """Posición de e_{i,0} en el vector crudo [e, e_{1,0..p_1-1}, e_{2,0..}, ...]."""
        posiciones, actual = [], 1
        for pi in self.p:
            posiciones.append(actual)
            actual += pi
        return tuple(posiciones)

    @cached_property
    def gram(self) -> np.ndarray:
        """Tabla de la forma de Euler sobre los generadores crudos."""
        n = 1 + sum(self.p)
        g = np.zeros((n, n), dtype=np.int64)
        g[0, 0] = 1
        for i, pi in enumerate(self.p):
            base = self.desplazamientos[i]
            g[0, base + pi - 1] = 1
            g[base, 0] = -1
            for s in range(pi):
                g[base + s, base + s] = 1
                g[base + s, base + (s - 1) % pi] = -1
        return g

    # -- clases básicas --------------------------------------------------

    def zero(self) -> 'KClass':
        return KClass(self, 0, 0, tuple((0,) * (pi - 1) for pi in self.p))

    def e(self) -> 'KClass':
        return KClass(self, 1, 0, self.zero().arms)

    def delta(self) -> 'KClass':
        return KClass(self, 0, 1, self.zero().arms)

    def generator(self, i: int, s: int) -> 'KClass':
        """Clase de e_{i,s}; i empieza en 1 y s se toma módulo p_i."""
        if not 1 <= i <= self.n:
            raise ErrorValidacion(f"Brazo {i} fuera de rango para p = {self.p}", campo='clase')
        brazos = [[0] * pj for pj in self.p]
        brazos[i - 1][s % self.p[i - 1]] = 1
        return normal_form(RawKClass(self, 0, tuple(tuple(b) for b in brazos)))


@dataclass(frozen=True)
class RawKClass:
    """Combinación de e y de todos los e_{i,s} (s = 0..p_i-1), sin reducir."""
    ctx: LatticeContext
    e: int
    arms: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.arms) != self.ctx.n or any(len(b) != pi for b, pi in zip(self.arms, self.ctx.p)):
            raise ErrorValidacion("La forma de la clase cruda no coincide con los pesos", campo='clase')

    def vector(self) -> np.ndarray:
        return np.array([self.e] + [x for brazo in self.arms for x in brazo], dtype=np.int64)


@dataclass(frozen=True)
class KClass:
    ctx: LatticeContext
    e: int
    delta: int
    arms: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.arms) != self.ctx.n or any(len(b) != pi - 1 for b, pi in zip(self.arms, self.ctx.p)):
            raise ErrorValidacion("La forma de la clase no coincide con los pesos", campo='clase')

    def _mismo_contexto(self, otra: 'KClass'):
        if self.ctx != otra.ctx:
            raise ErrorValidacion(f"Contextos distintos {self.ctx.p} y {otra.ctx.p}", campo='clase')

    def __add__(self, otra: 'KClass') -> 'KClass':
        self._mismo_contexto(otra)
        return KClass(self.ctx, self.e + otra.e, self.delta + otra.delta,
                      tuple(tuple(x + y for x, y in zip(a, b)) for a, b in zip(self.arms, otra.arms)))

    def __neg__(self) -> 'KClass':
        return -1 * self

    def __sub__(self, otra: 'KClass') -> 'KClass':
        return self + (-otra)

    def __rmul__(self, k: int) -> 'KClass':
        return KClass(self.ctx, k * self.e, k * self.delta, tuple(tuple(k * x for x in b) for b in self.arms))

    def is_zero(self) -> bool:
        return self.e == 0 and self.delta == 0 and not any(x for b in self.arms for x in b)

    def expand(self, brazo: int = 0) -> RawKClass:
        """Clase cruda con δ desarrollado como Σ_s e_{brazo,s} (brazo desde 0)."""
        brazos = []
        for i, b in enumerate(self.arms):
            crudo = [0] + list(b)
            if i == brazo:
                crudo = [x + self.delta for x in crudo]
            brazos.append(tuple(crudo))
        return RawKClass(self.ctx, self.e, tuple(brazos))

    def to_dict(self):
        return {'e': self.e, 'delta': self.delta, 'arms': [list(b) for b in self.arms]}

    @classmethod
    def from_dict(cls, ctx: LatticeContext, datos: Dict) -> 'KClass':
        return cls(ctx, int(datos['e']), int(datos['delta']),
                   tuple(tuple(int(x) for x in b) for b in datos['arms']))


def normal_form(raw: RawKClass) -> KClass:
    delta = sum(b[0] for b in raw.arms)
    return KClass(raw.ctx, raw.e, delta, tuple(tuple(x - b[0] for x in b[1:]) for b in raw.arms))


def euler_raw(x: RawKClass, y: RawKClass) -> int:
    return int(x.vector() @ x.ctx.gram @ y.vector())


def euler(x: KClass, y: KClass, brazo: int = 0) -> int:
    """⟨x, y⟩ extendida bilinealmente desde la tabla de generadores."""
    x._mismo_contexto(y)
    return euler_raw(x.expand(brazo), y.expand(brazo))


def sym(x: KClass, y: KClass) -> int:
    return euler(x, y) + euler(y, x)


def rank(x: KClass) -> int:
    return x.e


def degree(x: KClass) -> int:
    ctx = x.ctx
    return x.delta * ctx.p_lcm + sum(sum(b) * (ctx.p_lcm // pi) for b, pi in zip(x.arms, ctx.p))


def slope(x: KClass) -> Union[Fraction, float]:
    """grado/rango; ±inf para rango 0 según el signo del grado."""
    r, g = rank(x), degree(x)
    if r != 0:
        return Fraction(g, r)
    if g > 0:
        return math.inf
    if g < 0:
        return -math.inf
    raise ErrorValidacion("Pendiente indefinida para una clase de rango y grado nulos", campo='clase')


_TERMINO = re.compile(r'([+-]?)\s*(\d*)\s*\*?\s*(delta|δ|e_(\d+)_(\d+)|e)')


def parse_kclass(ctx: LatticeContext, texto: str) -> KClass:
    """
    Lee expresiones como 'e', 'delta', '2e - e_1_0 + delta'.
    Los generadores e_i_s admiten s = 0.
    """
    limpio = texto.replace(' ', '')
    if not limpio:
        raise ErrorValidacion("Clase vacía", campo='clase')
    total = ctx.zero()
    posicion = 0
    for m in _TERMINO.finditer(limpio):
        if m.start() != posicion:
            break
        posicion = m.end()
        coef = int(m.group(2) or 1) * (-1 if m.group(1) == '-' else 1)
        simbolo = m.group(3)
        if simbolo == 'e':
            termino = ctx.e()
        elif simbolo in ('delta', 'δ'):
            termino = ctx.delta()
        else:
            i, s = int(m.group(4)), int(m.group(5))
            if not (1 <= i <= ctx.n and 0 <= s < ctx.p[i - 1]):
                raise ErrorValidacion(f"Generador {simbolo} fuera de rango", campo='clase')
            termino = ctx.generator(i, s)
        total = total + coef * termino
    if posicion != len(limpio):
        raise ErrorValidacion(f"No se pudo interpretar la clase '{texto}'", campo='clase')
    return total


# ---------------------------------------------------------------------------
# Presentaciones: sumandos del tilting, Cartan y ψ
# ---------------------------------------------------------------------------

def contexto(pres: AlgebraPresentation) -> LatticeContext:
    return LatticeContext(pres.weight.p)


def tilting_summand_classes(pres: AlgebraPresentation) -> Dict[Hashable, KClass]:
    """
    Clases [T_v] de los sumandos del tilting, en el orden de vértices.

    Canónica: O(j x_i) = e + Σ_{s<j} e_{i,s}. Squid: el sumando de torsión en
    (i, j) es el uniseriado con factores e_{i,j}, …, e_{i,p_i-1}.
    """
    ctx = contexto(pres)
    clases: Dict[Hashable, KClass] = {}
    for v in pres.quiver.vertices:
        if v == 0:
            clases[v] = ctx.e()
        elif v == 1:
            clases[v] = ctx.e() + ctx.delta()
        elif pres.kind == CANONICA:
            i, j = v
            clases[v] = ctx.e()
            for s in range(j):
                clases[v] = clases[v] + ctx.generator(i, s)
        elif pres.kind == SQUID:
            i, j = v
            clases[v] = ctx.zero()
            for s in range(j, ctx.p[i - 1]):
                clases[v] = clases[v] + ctx.generator(i, s)
        else:
            raise ErrorValidacion(f"Tipo de álgebra sin clases de tilting: {pres.kind}", campo='algebra')
    return clases


@lru_cache(maxsize=None)
def cartan_matrix(pres: AlgebraPresentation) -> np.ndarray:
    """C[v][w] = dimensión del espacio de caminos v→w módulo el ideal de relaciones."""
    quiver = pres.quiver
    n = pres.n_vertices
    F = pres.field
    c = np.zeros((n, n), dtype=np.int64)
    for v in range(n):
        for w in range(n):
            caminos = quiver.caminos(v, w)
            if not caminos:
                continue
            posicion = {camino: k for k, camino in enumerate(caminos)}
            generadores = []
            for rel in pres.relations:
                s, t = rel.extremos(quiver)
                for prefijo in quiver.caminos(v, s):
                    for sufijo in quiver.caminos(t, w):
                        vector = np.zeros(len(caminos), dtype=np.int64)
                        for coef, camino in rel.terms:
                            k = posicion[prefijo + camino + sufijo]
                            vector[k] = F.suma(vector[k], coef)
                        generadores.append(vector)
            rango = mat_rank(F, np.array(generadores)) if generadores else 0
            c[v, w] = len(caminos) - rango

    inversa = inversa_racional(c.tolist())
    if any(x.denominator != 1 for fila in inversa for x in fila):
        raise ErrorInterno(f"Matriz de Cartan no invertible sobre Z para {pres.kind} {pres.weight.p}")
    return c


@lru_cache(maxsize=None)
def _clases_simples(pres: AlgebraPresentation) -> Tuple[KClass, ...]:
    """
    [S_v] resolviendo [T_v] = Σ_w C[w][v]·[S_w]: el proyectivo en v se lee
    como la columna v de la matriz de Cartan.
    """
    c = cartan_matrix(pres)
    tilting = list(tilting_summand_classes(pres).values())
    inversa = inversa_racional(c.T.tolist())
    ctx = contexto(pres)
    simples = []
    for fila in inversa:
        clase = ctx.zero()
        for coef, t in zip(fila, tilting):
            if coef.denominator != 1:
                raise ErrorInterno("Coeficiente no entero al invertir la matriz de Cartan")
            clase = clase + int(coef) * t
        simples.append(clase)
    return tuple(simples)


def simple_classes(pres: AlgebraPresentation) -> Dict[Hashable, KClass]:
    return dict(zip(pres.quiver.vertices, _clases_simples(pres)))


def psi_inverse(pres: AlgebraPresentation, d: Sequence[int]) -> KClass:
    d = pres.validar_dimension(d)
    total = contexto(pres).zero()
    for dv, s in zip(d, _clases_simples(pres)):
        if dv:
            total = total + dv * s
    return total


def euler_mod(pres: AlgebraPresentation, d: Sequence[int], e: Sequence[int]) -> int:
    return euler(psi_inverse(pres, d), psi_inverse(pres, e))


def euler_ringel(pres: AlgebraPresentation, d: Sequence[int], e: Sequence[int]) -> int:
    """
    Σ_v d_v e_v − Σ_{a: s→t} d_t e_s + Σ_{r: s→t} d_t e_s, calculada sólo con
    el carcaj; debe coincidir con euler_mod.
    """
    d = pres.validar_dimension(d)
    e = pres.validar_dimension(e)
    total = sum(x * y for x, y in zip(d, e))
    total -= sum(d[a.target] * e[a.source] for a in pres.quiver.arrows)
    for rel in pres.relations:
        s, t = rel.extremos(pres.quiver)
        total += d[t] * e[s]
    return total


def tilting_compatibility(pres: AlgebraPresentation) -> List[Dict]:
    """Filas (v, w, ⟨T_v,T_w⟩, C[v][w]) para todos los pares de vértices."""
    c = cartan_matrix(pres)
    clases = list(tilting_summand_classes(pres).items())
    filas = []
    for i, (v, tv) in enumerate(clases):
        for j, (w, tw) in enumerate(clases):
            valor = euler(tv, tw)
            filas.append({
                'v': etiqueta_vertice(v),
                'w': etiqueta_vertice(w),
                'euler': valor,
                'cartan': int(c[i, j]),
                'ok': valor == int(c[i, j])
            })
    return filas


__all__ = [
    'LatticeContext',
    'RawKClass',
    'KClass',
    'normal_form',
    'euler',
    'euler_raw',
    'sym',
    'rank',
    'degree',
    'slope',
    'parse_kclass',
    'contexto',
    'tilting_summand_classes',
    'cartan_matrix',
    'simple_classes',
    'psi_inverse',
    'euler_mod',
    'euler_ringel',
    'tilting_compatibility'
]
