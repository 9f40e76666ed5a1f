"""
Carcajes con relaciones: modelo de datos, constructores de las álgebras
canónicas y squid a partir de los pesos (p, λ) y comprobación de
relaciones para representaciones.

Orden de vértices: 0, 1 y después los vértices de los brazos (i, j)
recorriendo cada brazo completo antes del siguiente. Los vectores de
dimensión de la configuración siguen siempre este orden.
"""

import logging
from dataclasses import dataclass, field as campo_dc
from functools import lru_cache
from typing import Dict, Hashable, List, NamedTuple, Sequence, Tuple

import numpy as np

from algebra.cuerpos import Field, make_field, mat_mul, mat_inverse, solve_homogeneous
from algebra.errores import ErrorValidacion

logger = logging.getLogger(__name__)

CANONICA = 'canonical'
SQUID = 'squid'
TIPOS = (CANONICA, SQUID)


def etiqueta_vertice(v: Hashable) -> str:
    if isinstance(v, tuple):
        return f"({v[0]},{v[1]})"
    return str(v)


@dataclass(frozen=True)
class WeightData:
    """Pesos p = (p_1..p_N) y parámetros λ_3..λ_N (λ_1 = ∞ y λ_2 = 0 implícitos)."""
    p: Tuple[int, ...]
    lambdas: Tuple[int, ...]
    field: Field

    def __post_init__(self):
        object.__setattr__(self, 'p', tuple(int(x) for x in self.p))
        object.__setattr__(self, 'lambdas', tuple(int(x) for x in self.lambdas))

        if len(self.p) < 2:
            raise ErrorValidacion(f"Se necesitan al menos 2 pesos (N ≥ 2), recibidos {len(self.p)}",
                                  campo='p')
        if any(x < 2 for x in self.p):
            raise ErrorValidacion(f"Todos los pesos deben ser ≥ 2: {self.p}", campo='p')
        if len(self.lambdas) != len(self.p) - 2:
            raise ErrorValidacion(
                f"Se esperaban {len(self.p) - 2} valores λ para N = {len(self.p)}, "
                f"recibidos {len(self.lambdas)}", campo='lambda')
        for lam in self.lambdas:
            if not 0 <= lam < self.field.q:
                raise ErrorValidacion(f"λ = {lam} no es un elemento de F_{self.field.q}", campo='lambda')
            if lam == 0:
                raise ErrorValidacion("Los valores λ deben ser no nulos (λ_2 = 0 está reservado)",
                                      campo='lambda')
        if len(set(self.lambdas)) != len(self.lambdas):
            raise ErrorValidacion(
                f"Valores λ repetidos {self.lambdas}: los parámetros deben ser distintos dos a dos",
                campo='lambda')

    @property
    def n(self) -> int:
        return len(self.p)

    def extend_to(self, field: Field) -> 'WeightData':
        """Los mismos pesos con λ inmersos en un cuerpo extensión."""
        inmersion = self.field.embedding(field)
        return WeightData(self.p, tuple(int(inmersion[x]) for x in self.lambdas), field)

    def to_dict(self):
        return {'p': list(self.p), 'lambda': list(self.lambdas), 'field': self.field.to_dict()}


class Arrow(NamedTuple):
    """Flecha con índices de vértice."""
    source: int
    target: int
    label: str


@dataclass(frozen=True)
class Quiver:
    vertices: Tuple[Hashable, ...]
    arrows: Tuple[Arrow, ...]

    def __post_init__(self):
        n = len(self.vertices)
        etiquetas = [a.label for a in self.arrows]
        if len(set(etiquetas)) != len(etiquetas):
            raise ErrorValidacion("Etiquetas de flecha repetidas", campo='arrows')
        for a in self.arrows:
            if not (0 <= a.source < n and 0 <= a.target < n):
                raise ErrorValidacion(f"Flecha {a.label} con extremos inválidos", campo='arrows')

    def indice(self, vertice: Hashable) -> int:
        return self.vertices.index(vertice)

    def flecha(self, etiqueta: str) -> int:
        return next(k for k, a in enumerate(self.arrows) if a.label == etiqueta)

    def caminos(self, origen: int, destino: int) -> List[Tuple[int, ...]]:
        """Caminos de origen a destino (secuencias de flechas); incluye el trivial si coinciden."""
        resultado = []

        def extender(vertice, camino):
            if vertice == destino:
                resultado.append(camino)
            for k, a in enumerate(self.arrows):
                if a.source == vertice:
                    extender(a.target, camino + (k,))

        extender(origen, ())
        return resultado


@dataclass(frozen=True)
class Relation:
    """Combinación lineal Σ c·camino; cada camino en orden de recorrido."""
    terms: Tuple[Tuple[int, Tuple[int, ...]], ...]

    def extremos(self, quiver: Quiver) -> Tuple[int, int]:
        _, camino = self.terms[0]
        return quiver.arrows[camino[0]].source, quiver.arrows[camino[-1]].target


@dataclass(frozen=True)
class AlgebraPresentation:
    quiver: Quiver
    relations: Tuple[Relation, ...]
    kind: str
    weight: WeightData

    def __post_init__(self):
        for rel in self.relations:
            if not rel.terms:
                raise ErrorValidacion("Relación vacía", campo='relations')
            extremos = set()
            for _, camino in rel.terms:
                if not camino:
                    raise ErrorValidacion("Camino vacío en una relación", campo='relations')
                for a, b in zip(camino, camino[1:]):
                    if self.quiver.arrows[a].target != self.quiver.arrows[b].source:
                        raise ErrorValidacion("Camino no componible en una relación", campo='relations')
                extremos.add((self.quiver.arrows[camino[0]].source,
                              self.quiver.arrows[camino[-1]].target))
            if len(extremos) != 1:
                raise ErrorValidacion("Los caminos de una relación no comparten extremos",
                                      campo='relations')

        esperadas = {CANONICA: self.weight.n - 2, SQUID: self.weight.n}.get(self.kind)
        if esperadas is not None and len(self.relations) != esperadas:
            raise ErrorValidacion(f"El álgebra {self.kind} requiere {esperadas} relaciones",
                                  campo='relations')

    @property
    def field(self) -> Field:
        return self.weight.field

    @property
    def n_vertices(self) -> int:
        return len(self.quiver.vertices)

    def validar_dimension(self, d: Sequence[int]) -> Tuple[int, ...]:
        d = tuple(int(x) for x in d)
        if len(d) != self.n_vertices:
            raise ErrorValidacion(
                f"El vector de dimensión tiene {len(d)} entradas; el carcaj tiene {self.n_vertices} "
                f"vértices en el orden {[etiqueta_vertice(v) for v in self.quiver.vertices]}",
                campo='dim')
        if any(x < 0 for x in d):
            raise ErrorValidacion(f"Vector de dimensión con entradas negativas: {d}", campo='dim')
        return d

    def exponente(self, d: Sequence[int]) -> int:
        """Número de entradas libres Σ_{a: s→t} d_s·d_t."""
        return sum(d[a.source] * d[a.target] for a in self.quiver.arrows)

    def describir(self) -> Dict:
        return {
            'algebra': self.kind,
            **self.weight.to_dict(),
            'vertices': [etiqueta_vertice(v) for v in self.quiver.vertices]
        }


def _vertices_brazos(p: Sequence[int]) -> List[Hashable]:
    return [0, 1] + [(i + 1, j) for i, pi in enumerate(p) for j in range(1, pi)]


def canonical_algebra(w: WeightData) -> AlgebraPresentation:
    """Álgebra canónica: N brazos de 0 a 1 y N-2 relaciones entre sus composiciones."""
    vertices = tuple(_vertices_brazos(w.p))
    indice = {v: k for k, v in enumerate(vertices)}

    flechas: List[Arrow] = []
    brazos: List[Tuple[int, ...]] = []
    for i, pi in enumerate(w.p, start=1):
        camino = []
        for j in range(pi):
            origen = 0 if j == 0 else indice[(i, j)]
            destino = 1 if j == pi - 1 else indice[(i, j + 1)]
            camino.append(len(flechas))
            flechas.append(Arrow(origen, destino, f"x{i},{j}"))
        brazos.append(tuple(camino))

    F = w.field
    menos_uno = int(F.opuesto(1))
    relaciones = tuple(
        # brazo_i - brazo_1 + λ_i·brazo_2 = 0
        Relation(((1, brazos[i]), (menos_uno, brazos[0]), (lam, brazos[1])))
        for i, lam in zip(range(2, w.n), w.lambdas)
    )
    return AlgebraPresentation(Quiver(vertices, tuple(flechas)), relaciones, CANONICA, w)


def squid_algebra(w: WeightData) -> AlgebraPresentation:
    """Álgebra squid: flechas a, b: 0→1 y brazos que salen de 1."""
    vertices = tuple(_vertices_brazos(w.p))
    indice = {v: k for k, v in enumerate(vertices)}

    flechas = [Arrow(0, 1, 'a'), Arrow(0, 1, 'b')]
    primeras = []
    for i, pi in enumerate(w.p, start=1):
        for j in range(1, pi):
            origen = 1 if j == 1 else indice[(i, j - 1)]
            if j == 1:
                primeras.append(len(flechas))
            flechas.append(Arrow(origen, indice[(i, j)], f"x{i},{j}"))

    F = w.field
    menos_uno = int(F.opuesto(1))
    relaciones = [Relation(((1, (0, primeras[0])),)), Relation(((1, (1, primeras[1])),))]
    for i, lam in zip(range(2, w.n), w.lambdas):
        # x_{i,1}(λ_i a - b) = 0
        relaciones.append(Relation(((lam, (0, primeras[i])), (menos_uno, (1, primeras[i])))))
    return AlgebraPresentation(Quiver(vertices, tuple(flechas)), tuple(relaciones), SQUID, w)


def build_presentation(kind: str, p: Sequence[int], lambdas: Sequence[int], field: Field) -> AlgebraPresentation:
    if kind not in TIPOS:
        raise ErrorValidacion(f"Tipo de álgebra desconocido '{kind}' (use {' o '.join(TIPOS)})",
                              campo='algebra')
    w = WeightData(tuple(p), tuple(lambdas), field)
    return canonical_algebra(w) if kind == CANONICA else squid_algebra(w)


@lru_cache(maxsize=None)
def extend_presentation(pres: AlgebraPresentation, l: int) -> AlgebraPresentation:
    """La misma presentación sobre F_{q^l}, con λ inmersos."""
    if l == 1:
        return pres
    F = pres.field
    grande = make_field(F.characteristic, F.degree * l)
    return build_presentation(pres.kind, pres.weight.p, pres.weight.extend_to(grande).lambdas, grande)


# ---------------------------------------------------------------------------
# Representaciones
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Representation:
    """Una matriz d_destino × d_origen por flecha."""
    presentation: AlgebraPresentation
    dim: Tuple[int, ...]
    matrices: Tuple[np.ndarray, ...] = campo_dc(repr=False)

    def __post_init__(self):
        for a, m in zip(self.presentation.quiver.arrows, self.matrices):
            if m.shape != (self.dim[a.target], self.dim[a.source]):
                raise ErrorValidacion(f"Forma {m.shape} incorrecta para la flecha {a.label}",
                                      campo='matrices')

    @property
    def field(self) -> Field:
        return self.presentation.field

    def clave(self) -> Tuple:
        return (self.dim,) + tuple(tuple(m.ravel()) for m in self.matrices)

    def extend_to(self, l: int) -> 'Representation':
        """Extensión de escalares a F_{q^l}."""
        grande = extend_presentation(self.presentation, l)
        inmersion = self.field.embedding(grande.field)
        return Representation(grande, self.dim, tuple(inmersion[m] for m in self.matrices))

    def to_dict(self):
        return {
            'dim': list(self.dim),
            'matrices': {a.label: m.tolist()
                         for a, m in zip(self.presentation.quiver.arrows, self.matrices)}
        }


def zero_representation(pres: AlgebraPresentation, d: Sequence[int]) -> Representation:
    d = pres.validar_dimension(d)
    return Representation(pres, d, tuple(np.zeros((d[a.target], d[a.source]), dtype=np.int64)
                                         for a in pres.quiver.arrows))


def composite(M: Representation, camino: Sequence[int]) -> np.ndarray:
    """Matriz del camino: M_{a_k} ··· M_{a_1}."""
    resultado = M.matrices[camino[0]]
    for k in camino[1:]:
        resultado = mat_mul(M.field, M.matrices[k], resultado)
    return resultado


def rep_satisfies(M: Representation) -> bool:
    F = M.field
    for rel in M.presentation.relations:
        total = None
        for coef, camino in rel.terms:
            termino = F.producto(coef, composite(M, camino))
            total = termino if total is None else F.suma(total, termino)
        if np.any(total != 0):
            return False
    return True


def hom_basis(M: Representation, N: Representation) -> List[Tuple[np.ndarray, ...]]:
    """
    Base de Hom(M, N): familias φ_v (N_v × M_v) con φ_t·M_a = N_a·φ_s.
    """
    F = M.field
    d, e = M.dim, N.dim
    desplazamientos, total = [], 0
    for dv, ev in zip(d, e):
        desplazamientos.append(total)
        total += dv * ev

    filas = []
    for k, a in enumerate(M.presentation.quiver.arrows):
        s, t = a.source, a.target
        Ma, Na = M.matrices[k], N.matrices[k]
        for i in range(e[t]):
            for j in range(d[s]):
                fila = np.zeros(total, dtype=np.int64)
                for c in range(d[t]):
                    pos = desplazamientos[t] + i * d[t] + c
                    fila[pos] = F.suma(fila[pos], Ma[c, j])
                for l in range(e[s]):
                    pos = desplazamientos[s] + l * d[s] + j
                    fila[pos] = F.resta(fila[pos], Na[i, l])
                filas.append(fila)

    sistema = np.array(filas, dtype=np.int64).reshape(len(filas), total)
    base = []
    for x in solve_homogeneous(F, sistema):
        base.append(tuple(x[desplazamientos[v]:desplazamientos[v] + d[v] * e[v]].reshape(e[v], d[v])
                          for v in range(len(d))))
    return base


def conjugate(M: Representation, g: Sequence[np.ndarray]) -> Representation:
    """Acción de GL_d: M_a ↦ g_t·M_a·g_s^{-1}."""
    F = M.field
    inversas = [mat_inverse(F, gv) for gv in g]
    nuevas = tuple(
        mat_mul(F, mat_mul(F, g[a.target], m), inversas[a.source])
        for a, m in zip(M.presentation.quiver.arrows, M.matrices)
    )
    return Representation(M.presentation, M.dim, nuevas)


__all__ = [
    'CANONICA',
    'SQUID',
    'WeightData',
    'Arrow',
    'Quiver',
    'Relation',
    'AlgebraPresentation',
    'Representation',
    'canonical_algebra',
    'squid_algebra',
    'build_presentation',
    'extend_presentation',
    'zero_representation',
    'composite',
    'rep_satisfies',
    'hom_basis',
    'conjugate',
    'etiqueta_vertice'
]
