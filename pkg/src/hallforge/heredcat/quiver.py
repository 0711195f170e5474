"""Quiver representations over F_p and the linear algebra built on them.

Everything here works on an explicit arrow list rather than on a provider,
so the same routines serve plain representations and Z/2-graded complexes
(which are representations of a doubled quiver with relations).
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from hallforge import fqlinalg as fq
from hallforge.errors import ConfigError, ensure_within_cap

K0Class = Tuple[int, ...]
Arrow = Tuple[int, int]
Path = Tuple[int, ...]
# (path, other_path); other_path None means the path composes to zero
Relation = Tuple[Path, Optional[Path]]
Morphism = Tuple[np.ndarray, ...]

ISOMORPHISM_ATTEMPTS = 32


def k0_add(a: K0Class, b: K0Class) -> K0Class:
    return tuple(x + y for x, y in zip(a, b))


def k0_sub(a: K0Class, b: K0Class) -> K0Class:
    return tuple(x - y for x, y in zip(a, b))


def k0_neg(a: K0Class) -> K0Class:
    return tuple(-x for x in a)


def k0_zero(n: int) -> K0Class:
    return (0,) * n


def unit_vector(n: int, i: int) -> K0Class:
    return tuple(1 if j == i else 0 for j in range(n))


@dataclass(frozen=True)
class QuiverSpec:
    n: int
    arrows: Tuple[Arrow, ...]
    nilpotent: bool = False
    q: int = 2
    name: str = "custom"

    def __post_init__(self) -> None:
        object.__setattr__(self, "arrows", tuple((int(s), int(t)) for s, t in self.arrows))
        if self.n < 1:
            raise ConfigError(f"Quiver needs at least one vertex, got {self.n}")
        for s, t in self.arrows:
            if not (0 <= s < self.n and 0 <= t < self.n):
                raise ConfigError(f"Arrow ({s}, {t}) leaves the vertex range [0, {self.n})")
        if not fq.is_prime(self.q):
            raise ConfigError(f"q must be prime, got {self.q}")
        if self.has_oriented_cycle() and not self.nilpotent:
            raise ConfigError("Quivers with oriented cycles require nilpotent: true")

    def has_oriented_cycle(self) -> bool:
        succ: Dict[int, List[int]] = {v: [] for v in range(self.n)}
        for s, t in self.arrows:
            succ[s].append(t)
        state = [0] * self.n

        def visit(v: int) -> bool:
            state[v] = 1
            for w in succ[v]:
                if state[w] == 1 or (state[w] == 0 and visit(w)):
                    return True
            state[v] = 2
            return False

        return any(state[v] == 0 and visit(v) for v in range(self.n))

    def euler_exponent(self, alpha: Sequence[int], beta: Sequence[int]) -> int:
        value = sum(a * b for a, b in zip(alpha, beta))
        for s, t in self.arrows:
            value -= alpha[s] * beta[t]
        return value

    def sym_exponent(self, alpha: Sequence[int], beta: Sequence[int]) -> int:
        return self.euler_exponent(alpha, beta) + self.euler_exponent(beta, alpha)

    @property
    def rank_determined(self) -> bool:
        """Every vertex has at most one outgoing and one incoming arrow.

        Components are then equioriented paths or nilpotent oriented cycles, whose
        indecomposables are uniserial; the ranks of all path composites classify a
        representation up to isomorphism.
        """
        outgoing = Counter(s for s, _ in self.arrows)
        incoming = Counter(t for _, t in self.arrows)
        return all(count <= 1 for count in outgoing.values()) and all(count <= 1 for count in incoming.values())

    def with_q(self, q: int) -> "QuiverSpec":
        return QuiverSpec(n=self.n, arrows=self.arrows, nilpotent=self.nilpotent, q=q, name=self.name)

    @classmethod
    def from_json(cls, doc: Mapping[str, Any], name: str = "custom") -> "QuiverSpec":
        try:
            return cls(
                n=int(doc["vertices"]),
                arrows=tuple(tuple(a) for a in doc.get("arrows", [])),
                nilpotent=bool(doc.get("nilpotent", False)),
                q=int(doc.get("q", 2)),
                name=str(doc.get("name", name)),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"Malformed quiver document: {exc}") from exc

    def to_json(self) -> Dict[str, Any]:
        return {
            "vertices": self.n,
            "arrows": [list(a) for a in self.arrows],
            "nilpotent": self.nilpotent,
            "q": self.q,
        }


@dataclass(frozen=True, eq=False)
class Rep:
    """Representation: a vector space dimension per vertex and a matrix per arrow."""

    dim: Tuple[int, ...]
    maps: Tuple[np.ndarray, ...]

    @cached_property
    def key(self) -> Tuple[Any, ...]:
        return (self.dim, tuple((m.shape, m.tobytes()) for m in self.maps))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Rep) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    @property
    def total_dim(self) -> int:
        return sum(self.dim)

    @classmethod
    def zero(cls, n: int, arrows: Sequence[Arrow]) -> "Rep":
        return cls(dim=(0,) * n, maps=tuple(fq.zeros(0, 0) for _ in arrows))

    @classmethod
    def simple(cls, n: int, arrows: Sequence[Arrow], vertex: int) -> "Rep":
        dim = unit_vector(n, vertex)
        return cls(dim=dim, maps=tuple(fq.zeros(dim[t], dim[s]) for s, t in arrows))

    @classmethod
    def from_json(cls, doc: Mapping[str, Any], arrows: Sequence[Arrow], p: int) -> "Rep":
        dim = tuple(int(d) for d in doc["dim"])
        raw = doc.get("maps", [])
        maps = []
        for idx, (s, t) in enumerate(arrows):
            entries = raw[idx] if idx < len(raw) else []
            maps.append(fq.as_matrix(entries, p, shape=(dim[t], dim[s])))
        return cls(dim=dim, maps=tuple(maps))

    def to_json(self) -> Dict[str, Any]:
        return {"dim": list(self.dim), "maps": [m.tolist() for m in self.maps]}


def validate_rep(rep: Rep, arrows: Sequence[Arrow], p: int, nilpotent: bool = False) -> None:
    if len(rep.maps) != len(arrows):
        raise ConfigError(f"Representation has {len(rep.maps)} maps for {len(arrows)} arrows")
    for m, (s, t) in zip(rep.maps, arrows):
        if m.shape != (rep.dim[t], rep.dim[s]):
            raise ConfigError(f"Map for arrow ({s}, {t}) has shape {m.shape}, expected {(rep.dim[t], rep.dim[s])}")
    if nilpotent and not is_nilpotent(rep, arrows, p):
        raise ConfigError("Representation is not nilpotent")


def total_matrix(rep: Rep, arrows: Sequence[Arrow]) -> np.ndarray:
    """The block matrix of all arrows acting on the sum of the vertex spaces."""
    offsets = np.cumsum((0,) + rep.dim)
    big = fq.zeros(rep.total_dim, rep.total_dim)
    for m, (s, t) in zip(rep.maps, arrows):
        big[offsets[t]:offsets[t + 1], offsets[s]:offsets[s + 1]] += m
    return big


def is_nilpotent(rep: Rep, arrows: Sequence[Arrow], p: int) -> bool:
    big = total_matrix(rep, arrows) % p
    power = fq.identity(rep.total_dim)
    for _ in range(rep.total_dim):
        power = fq.matmul(power, big, p)
    return not power.any()


def direct_sum(x: Rep, y: Rep, arrows: Sequence[Arrow]) -> Rep:
    maps = []
    for mx, my, (s, t) in zip(x.maps, y.maps, arrows):
        block = fq.zeros(x.dim[t] + y.dim[t], x.dim[s] + y.dim[s])
        block[: x.dim[t], : x.dim[s]] = mx
        block[x.dim[t]:, x.dim[s]:] = my
        maps.append(block)
    return Rep(dim=k0_add(x.dim, y.dim), maps=tuple(maps))


# -- morphisms -------------------------------------------------------------


def _offsets(x_dim: Sequence[int], y_dim: Sequence[int]) -> List[int]:
    offsets = [0]
    for xv, yv in zip(x_dim, y_dim):
        offsets.append(offsets[-1] + xv * yv)
    return offsets


def intertwiner_system(x: Rep, y: Rep, arrows: Sequence[Arrow]) -> np.ndarray:
    """Coefficient matrix of ``f_t X_a = Y_a f_s`` in the row-major entries of the ``f_v``."""
    offsets = _offsets(x.dim, y.dim)
    blocks = []
    for mx, my, (s, t) in zip(x.maps, y.maps, arrows):
        rows = y.dim[t] * x.dim[s]
        block = fq.zeros(rows, offsets[-1])
        block[:, offsets[t]:offsets[t + 1]] += fq.kron(fq.identity(y.dim[t]), mx.T)
        block[:, offsets[s]:offsets[s + 1]] -= fq.kron(my, fq.identity(x.dim[s]))
        blocks.append(block)
    if not blocks:
        return fq.zeros(0, offsets[-1])
    return np.concatenate(blocks, axis=0)


def vector_to_morphism(vec: np.ndarray, x_dim: Sequence[int], y_dim: Sequence[int]) -> Morphism:
    offsets = _offsets(x_dim, y_dim)
    return tuple(
        np.array(vec[offsets[v]:offsets[v + 1]], dtype=np.int64).reshape(y_dim[v], x_dim[v])
        for v in range(len(x_dim))
    )


def morphism_to_vector(f: Morphism) -> np.ndarray:
    if not f:
        return np.zeros(0, dtype=np.int64)
    return np.concatenate([block.reshape(-1) for block in f])


def hom_basis(x: Rep, y: Rep, arrows: Sequence[Arrow], p: int) -> List[Morphism]:
    system = intertwiner_system(x, y, arrows) % p
    return [vector_to_morphism(vec, x.dim, y.dim) for vec in fq.kernel_basis(system, p)]


def hom_dim(x: Rep, y: Rep, arrows: Sequence[Arrow], p: int) -> int:
    system = intertwiner_system(x, y, arrows) % p
    return system.shape[1] - fq.rank(system, p)


def enumerate_hom(
    x: Rep, y: Rep, arrows: Sequence[Arrow], p: int, cap: int, cap_name: str = "hom_scan"
) -> Iterator[Morphism]:
    system = intertwiner_system(x, y, arrows) % p
    basis = fq.kernel_basis(system, p)
    for vec in fq.enumerate_span(basis, system.shape[1], p, cap, cap_name):
        yield vector_to_morphism(vec, x.dim, y.dim)


def compose(g: Morphism, f: Morphism, p: int) -> Morphism:
    """``g . f`` vertexwise."""
    return tuple(fq.matmul(gv, fv, p) for gv, fv in zip(g, f))


def is_zero_morphism(f: Morphism) -> bool:
    return not any(block.any() for block in f)


def is_isomorphism(f: Morphism, p: int) -> bool:
    return all(fq.is_invertible(block, p) for block in f)


def is_injective(f: Morphism, p: int) -> bool:
    return all(fq.rank(block, p) == block.shape[1] for block in f)


def is_surjective(f: Morphism, p: int) -> bool:
    return all(fq.rank(block, p) == block.shape[0] for block in f)


def is_intertwiner(f: Morphism, x: Rep, y: Rep, arrows: Sequence[Arrow], p: int) -> bool:
    for mx, my, (s, t) in zip(x.maps, y.maps, arrows):
        if ((f[t] @ mx - my @ f[s]) % p).any():
            return False
    return True


def find_isomorphism(
    x: Rep,
    y: Rep,
    arrows: Sequence[Arrow],
    p: int,
    cap: int,
    cap_name: str = "hom_scan",
    attempts: int = ISOMORPHISM_ATTEMPTS,
) -> Optional[Morphism]:
    """An invertible intertwiner x -> y, or None, which certifies non-isomorphism.

    Random elements of Hom(x, y) are tried first; only when they all fail is
    Hom(x, y) scanned in order, stopping at the first isomorphism.
    """
    if x.dim != y.dim:
        return None
    dim_xy = hom_dim(x, y, arrows, p)
    if any(dim_xy != hom_dim(a, b, arrows, p) for a, b in ((x, x), (y, y), (y, x))):
        return None
    system = intertwiner_system(x, y, arrows) % p
    basis = fq.kernel_basis(system, p)
    rng = np.random.default_rng([p, len(basis), x.total_dim])
    candidates = itertools.chain(
        fq.sample_span(basis, system.shape[1], p, attempts, rng),
        fq.scan_span(basis, system.shape[1], p, cap, cap_name),
    )
    for vec in candidates:
        f = vector_to_morphism(vec, x.dim, y.dim)
        if is_isomorphism(f, p):
            return f
    return None


def count_automorphisms(x: Rep, arrows: Sequence[Arrow], p: int, cap: int, cap_name: str = "hom_scan") -> int:
    return sum(1 for f in enumerate_hom(x, x, arrows, p, cap, cap_name) if is_isomorphism(f, p))


def arrow_word_ranks(
    rep: Rep, arrows: Sequence[Arrow], p: int, max_words: Optional[int] = 64
) -> Tuple[int, ...]:
    """Ranks of composites along all arrow paths of length up to the total dimension.

    ``max_words=None`` keeps every path.
    """
    limit = max_words if max_words is not None else float("inf")
    ranks: List[int] = []
    frontier: List[Tuple[int, np.ndarray]] = [(t, m) for m, (_, t) in zip(rep.maps, arrows)]
    length = 1
    while frontier and len(ranks) < limit and length <= max(rep.total_dim, 1):
        ranks.extend(fq.rank(m, p) for _, m in frontier)
        nxt: List[Tuple[int, np.ndarray]] = []
        for end, m in frontier:
            for arrow_map, (s, t) in zip(rep.maps, arrows):
                if s == end:
                    nxt.append((t, fq.matmul(arrow_map, m, p)))
        frontier = nxt
        length += 1
    return tuple(ranks if max_words is None else ranks[:max_words])


# -- subquotients ------------------------------------------------------------


def is_arrow_stable(rep: Rep, bases: Sequence[np.ndarray], arrows: Sequence[Arrow], p: int) -> bool:
    for m, (s, t) in zip(rep.maps, arrows):
        moved = fq.matmul(m, bases[s], p)
        if fq.rank(np.concatenate([bases[t], moved], axis=1), p) != bases[t].shape[1]:
            return False
    return True


def split_subrep(
    rep: Rep, bases: Sequence[np.ndarray], arrows: Sequence[Arrow], p: int
) -> Tuple[Rep, Rep]:
    """Induced structures on an arrow-stable subspace tuple and on the quotient.

    ``bases[v]`` holds independent columns spanning the subspace at ``v``; the
    quotient uses the complement chosen by ``complete_basis``.
    """
    sub_maps = []
    quot_maps = []
    coords = []
    for v, basis in enumerate(bases):
        complement = fq.complete_basis(basis, p)
        full = np.concatenate([basis, complement], axis=1)
        coords.append((fq.inverse(full, p) if full.size else full, basis, complement))
    for m, (s, t) in zip(rep.maps, arrows):
        inv_t, basis_t, _ = coords[t]
        _, basis_s, comp_s = coords[s]
        k_t = basis_t.shape[1]
        on_sub = fq.matmul(inv_t, fq.matmul(m, basis_s, p), p) if inv_t.size else fq.zeros(0, basis_s.shape[1])
        on_comp = fq.matmul(inv_t, fq.matmul(m, comp_s, p), p) if inv_t.size else fq.zeros(0, comp_s.shape[1])
        sub_maps.append(on_sub[:k_t, :])
        quot_maps.append(on_comp[k_t:, :])
    sub = Rep(dim=tuple(b.shape[1] for b in bases), maps=tuple(sub_maps))
    quotient = Rep(dim=tuple(d - b.shape[1] for d, b in zip(rep.dim, bases)), maps=tuple(quot_maps))
    return sub, quotient


def subquotient(
    rep: Rep,
    outer: Sequence[np.ndarray],
    inner: Sequence[np.ndarray],
    arrows: Sequence[Arrow],
    p: int,
) -> Rep:
    """``outer / inner`` for nested arrow-stable subspace tuples given in ambient coordinates."""
    outer_rep, _ = split_subrep(rep, outer, arrows, p)
    inner_coords = [fq.solve_columns(o, i, p) for o, i in zip(outer, inner)]
    _, quotient = split_subrep(outer_rep, inner_coords, arrows, p)
    return quotient


def kernel_bases(f: Morphism, p: int) -> List[np.ndarray]:
    return [fq.kernel_matrix(block, p) for block in f]


def image_bases(f: Morphism, p: int) -> List[np.ndarray]:
    return [fq.image_matrix(block, p) for block in f]


def kernel_obj(x: Rep, f: Morphism, arrows: Sequence[Arrow], p: int) -> Rep:
    return split_subrep(x, kernel_bases(f, p), arrows, p)[0]


def image_obj(y: Rep, f: Morphism, arrows: Sequence[Arrow], p: int) -> Rep:
    return split_subrep(y, image_bases(f, p), arrows, p)[0]


def cokernel_obj(y: Rep, f: Morphism, arrows: Sequence[Arrow], p: int) -> Rep:
    return split_subrep(y, image_bases(f, p), arrows, p)[1]


def enumerate_subreps(
    rep: Rep, sub_dim: Sequence[int], arrows: Sequence[Arrow], p: int, cap: int
) -> Iterator[List[np.ndarray]]:
    """Arrow-stable subspace tuples of the given dimension vector."""
    total = 1
    for n_v, k_v in zip(rep.dim, sub_dim):
        total *= fq.gaussian_binomial(n_v, k_v, p)
    ensure_within_cap("subspace_scan", total, cap)
    if total == 0:
        return
    per_vertex = [list(fq.enumerate_subspaces(n_v, k_v, p)) for n_v, k_v in zip(rep.dim, sub_dim)]
    for bases in itertools.product(*per_vertex):
        if is_arrow_stable(rep, bases, arrows, p):
            yield list(bases)


def count_ses(
    sub: Rep, mid: Rep, quotient: Rep, arrows: Sequence[Arrow], p: int, cap: int, cap_name: str = "hom_scan"
) -> int:
    """Pairs (i: sub -> mid injective, s: mid -> quotient surjective) with s . i = 0.

    With matching dimension vectors these are exactly the short exact sequences.
    """
    if k0_add(sub.dim, quotient.dim) != mid.dim:
        return 0
    hom_mq = hom_basis(mid, quotient, arrows, p)
    count = 0
    for inc in enumerate_hom(sub, mid, arrows, p, cap, cap_name):
        if not is_injective(inc, p):
            continue
        for proj in _annihilating(hom_mq, inc, mid, quotient, p, cap, cap_name):
            if is_surjective(proj, p):
                count += 1
    return count


def _annihilating(
    basis: List[Morphism], inc: Morphism, mid: Rep, target: Rep, p: int, cap: int, cap_name: str
) -> Iterator[Morphism]:
    """Elements of span(basis) vanishing on the image of ``inc``."""
    if not basis:
        yield tuple(fq.zeros(target.dim[v], mid.dim[v]) for v in range(len(mid.dim)))
        return
    columns = [morphism_to_vector(compose(h, inc, p)) for h in basis]
    constraint = np.stack(columns, axis=1) % p
    coords = fq.kernel_basis(constraint, p)
    stacked = np.stack([morphism_to_vector(h) for h in basis], axis=0)
    for c in fq.enumerate_span(coords, len(basis), p, cap, cap_name):
        yield vector_to_morphism((c @ stacked) % p, mid.dim, target.dim)


def dims_below(dim: Sequence[int]) -> Iterator[K0Class]:
    """All dimension vectors componentwise below ``dim``, in lexicographic order."""
    for sub in itertools.product(*(range(d + 1) for d in dim)):
        yield tuple(sub)


# -- extensions ----------------------------------------------------------------


@dataclass
class ExtensionSpace:
    """Block upper-triangular structures ``[[sub, r], [0, quotient]]`` satisfying the relations.

    Each structure is the middle term of a short exact sequence
    ``0 -> sub -> X -> quotient -> 0`` with the canonical inclusion and projection.
    """

    sub: Rep
    quotient: Rep
    arrows: Tuple[Arrow, ...]
    p: int
    basis: List[np.ndarray]
    length: int

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def size(self) -> int:
        return self.p ** self.dimension

    @property
    def overlap(self) -> int:
        """``sum_v dim sub_v * dim quotient_v``: the exponent relating structures to short exact sequences."""
        return sum(a * b for a, b in zip(self.sub.dim, self.quotient.dim))

    def realize(self, vec: np.ndarray) -> Rep:
        maps = []
        pos = 0
        for idx, (s, t) in enumerate(self.arrows):
            rows, cols = self.sub.dim[t], self.quotient.dim[s]
            r = np.array(vec[pos:pos + rows * cols], dtype=np.int64).reshape(rows, cols)
            pos += rows * cols
            block = fq.zeros(self.sub.dim[t] + self.quotient.dim[t], self.sub.dim[s] + self.quotient.dim[s])
            block[: self.sub.dim[t], : self.sub.dim[s]] = self.sub.maps[idx]
            block[: self.sub.dim[t], self.sub.dim[s]:] = r
            block[self.sub.dim[t]:, self.sub.dim[s]:] = self.quotient.maps[idx]
            maps.append(block % self.p)
        return Rep(dim=k0_add(self.sub.dim, self.quotient.dim), maps=tuple(maps))

    def structures(self, cap: int, cap_name: str) -> Iterator[Rep]:
        for vec in fq.enumerate_span(self.basis, self.length, self.p, cap, cap_name):
            yield self.realize(vec)

    def coboundaries(self) -> np.ndarray:
        """Columns: the off-diagonal blocks ``h_t Q_a - S_a h_s`` of the base changes ``[[1, h], [0, 1]]``."""
        columns = []
        for v in range(len(self.sub.dim)):
            for i in range(self.sub.dim[v]):
                for j in range(self.quotient.dim[v]):
                    blocks = []
                    for idx, (s, t) in enumerate(self.arrows):
                        block = fq.zeros(self.sub.dim[t], self.quotient.dim[s])
                        if t == v:
                            block[i, :] += self.quotient.maps[idx][j, :]
                        if s == v:
                            block[:, j] -= self.sub.maps[idx][:, i]
                        blocks.append(block.reshape(-1))
                    columns.append(np.concatenate(blocks) if blocks else np.zeros(0, dtype=np.int64))
        if not columns:
            return fq.zeros(self.length, 0)
        return np.stack(columns, axis=1) % self.p

    def classes(self, cap: int, cap_name: str) -> Iterator[Tuple[Rep, int]]:
        """One structure per coset of the coboundaries, with the coset size.

        Structures in one coset are isomorphic, so weighting each
        representative by its coset size reproduces sums over ``structures``.
        """
        if not self.basis:
            yield self.realize(np.zeros(self.length, dtype=np.int64)), 1
            return
        frame = np.stack(self.basis, axis=1)
        coords = fq.solve_columns(frame, self.coboundaries(), self.p)
        image = fq.image_matrix(coords, self.p)
        complement = fq.complete_basis(image, self.p)
        weight = self.p ** image.shape[1]
        representatives = [fq.matmul(frame, complement[:, [k]], self.p)[:, 0] for k in range(complement.shape[1])]
        for vec in fq.enumerate_span(representatives, self.length, self.p, cap, cap_name):
            yield self.realize(vec), weight

    def inclusion(self) -> Morphism:
        return tuple(
            np.concatenate([fq.identity(b), fq.zeros(a, b)], axis=0)
            for b, a in zip(self.sub.dim, self.quotient.dim)
        )

    def projection(self) -> Morphism:
        return tuple(
            np.concatenate([fq.zeros(a, b), fq.identity(a)], axis=1)
            for b, a in zip(self.sub.dim, self.quotient.dim)
        )


def _path_map(rep: Rep, path: Sequence[int], start_dim: int) -> np.ndarray:
    m = fq.identity(start_dim)
    for arrow in path:
        m = rep.maps[arrow] @ m
    return m


def extension_space(
    sub: Rep,
    quotient: Rep,
    arrows: Sequence[Arrow],
    p: int,
    relations: Sequence[Relation] = (),
) -> ExtensionSpace:
    arrows = tuple(arrows)
    offsets = [0]
    for s, t in arrows:
        offsets.append(offsets[-1] + sub.dim[t] * quotient.dim[s])
    length = offsets[-1]

    def off_diagonal(path: Path) -> np.ndarray:
        # off-diagonal block of the composite along ``path`` is linear in the r's
        start = arrows[path[0]][0]
        end = arrows[path[-1]][1]
        rows = sub.dim[end] * quotient.dim[start]
        block = fq.zeros(rows, length)
        for j, arrow in enumerate(path):
            s, t = arrows[arrow]
            after = _path_map(sub, path[j + 1:], sub.dim[t])
            before = _path_map(quotient, path[:j], quotient.dim[start])
            block[:, offsets[arrow]:offsets[arrow + 1]] += fq.kron(after, before.T)
        return block

    rows = []
    for path, other in relations:
        lhs = off_diagonal(path)
        if other is not None:
            lhs = lhs - off_diagonal(other)
        rows.append(lhs)
    if rows:
        system = np.concatenate(rows, axis=0) % p
        basis = fq.kernel_basis(system, p)
    else:
        basis = [row for row in fq.identity(length)]
    return ExtensionSpace(sub=sub, quotient=quotient, arrows=arrows, p=p, basis=basis, length=length)
