"""Fixture categories: the algebra k, directed categories, exceptional
collections, Poincaré duality algebras, and single-coefficient mutations.

Every generator verifies its output before returning it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

from cyclix.ainfty import AInftyData, _Resolver, verify_ainfty
from cyclix.calabi_yau import PairingData, verify_cy


class NotUpperTriangular(ValueError):
    pass


class ViolatesExceptionality(ValueError):
    pass


class NoSuchCoefficient(KeyError):
    pass


class InvalidFixture(ValueError):
    pass


def _checked(data: AInftyData) -> AInftyData:
    report = verify_ainfty(data, 2 * data.max_arity - 1)
    if not report.passed:
        raise InvalidFixture(f"generated data fails the A-infinity relations:\n{report}")
    if data.pairing is not None:
        cy = verify_cy(data)
        if not cy.passed:
            raise InvalidFixture(f"generated pairing is not Calabi-Yau:\n{cy}")
    return data


def trivial_k() -> AInftyData:
    """The ground field as a one-object category with a strict unit."""
    return _checked(
        AInftyData.build(
            ["A"],
            {("A", "A"): [("1", 0)]},
            [(("1", "1"), "1", 1)],
            suspended=False,
            provenance="trivial-k",
        )
    )


# ---------------------------------------------------------------------------
# directed categories


def directed_category(
    r: int,
    hom_data: Mapping[tuple[int, int], Sequence[tuple[str, int]]] | None = None,
    compositions: Sequence[tuple[Sequence, object, object]] = (),
    *,
    provenance: str | None = None,
) -> AInftyData:
    """Objects L1..Lr with k·id on the diagonal and the given upper hom spaces.

    ``hom_data[(i, j)]`` (1-based, i < j) lists ``(name, degree)``.
    ``compositions`` are raw m_k coefficients ``(inputs, output, c)`` between
    non-identity morphisms; the identity laws are added automatically.
    """
    if r < 1:
        raise ValueError("need at least one object")
    hom_data = dict(hom_data or {})
    for (i, j), els in hom_data.items():
        if not (1 <= i <= r and 1 <= j <= r):
            raise ValueError(f"object index out of range in Hom(L{i}, L{j})")
        if els and i >= j:
            raise NotUpperTriangular(f"Hom(L{i}, L{j}) must vanish in a directed category")
    objects = [f"L{i}" for i in range(1, r + 1)]
    homs: dict[tuple[str, str], list[tuple[str, int]]] = {}
    ids = {}
    for i in range(1, r + 1):
        ids[i] = f"id{i}"
        homs[(f"L{i}", f"L{i}")] = [(ids[i], 0)]
    for (i, j), els in sorted(hom_data.items()):
        if els:
            homs[(f"L{i}", f"L{j}")] = list(els)
    ops = []
    for i in range(1, r + 1):
        ops.append(((ids[i], ids[i]), ids[i], 1))
    for (i, j), els in hom_data.items():
        for name, _ in els:
            ops.append(((ids[i], name), name, 1))
            ops.append(((name, ids[j]), name, 1))
    ops.extend(compositions)
    data = AInftyData.build(
        objects, homs, ops, suspended=False, max_arity=max([2] + [len(c[0]) for c in compositions]),
        provenance=provenance or f"directed r={r}",
    )
    return _checked(data)


def random_directed(r: int, seed: int = 0, max_dim: int = 1, *, degrees: bool = True) -> AInftyData:
    """A random directed category with associative compositions.

    Object i gets a height h_i and Hom(L_i, L_j) a first basis element of
    degree h_j - h_i. Those elements compose with coefficient
    λ_ij λ_jk / λ_ik, which is associative; further basis elements (up to
    ``max_dim``) compose to zero.
    """
    rng = random.Random(seed)
    height = [rng.randint(-2, 2) if degrees else 0 for _ in range(r + 1)]
    lam = {}
    hom_data = {}
    for i in range(1, r + 1):
        for j in range(i + 1, r + 1):
            dim = rng.randint(1, max_dim)
            base = height[j] - height[i]
            els = [(f"f{i}{j}", base)]
            for t in range(1, dim):
                els.append((f"f{i}{j}_{t}", base + (rng.randint(-1, 1) if degrees else 0)))
            hom_data[(i, j)] = els
            lam[(i, j)] = Fraction(rng.choice([1, 2, 3, -1, -2]), rng.choice([1, 2, 3]))
    comps = []
    for i in range(1, r + 1):
        for j in range(i + 1, r + 1):
            for k in range(j + 1, r + 1):
                c = lam[(i, j)] * lam[(j, k)] / lam[(i, k)]
                comps.append(((f"f{i}{j}", f"f{j}{k}"), f"f{i}{k}", c))
    return directed_category(r, hom_data, comps, provenance=f"random directed r={r} seed={seed}")


def exceptional_endomorphism(
    size: int,
    ext_data: Mapping[tuple[int, int], Sequence[tuple[str, int]]] | None = None,
    compositions: Sequence[tuple[Sequence, object, object]] = (),
) -> AInftyData:
    """Category of a strong exceptional collection E_1..E_size.

    ``ext_data[(i, j)]`` lists the basis of Hom(E_i, E_j). Diagonal entries,
    when given, must be a single degree-0 element; everything must sit in
    degree 0 and vanish below the diagonal.
    """
    if size < 1:
        raise ValueError("need at least one object")
    ext_data = dict(ext_data or {})
    upper = {}
    for (i, j), els in ext_data.items():
        els = list(els)
        if i == j:
            if len(els) != 1 or els[0][1] != 0:
                raise ViolatesExceptionality(f"Hom(E{i}, E{i}) must be k·id, got {els}")
            continue
        if not els:
            continue
        if i > j:
            raise ViolatesExceptionality(f"Hom(E{i}, E{j}) must vanish for {i} > {j}")
        bad = [e for e in els if e[1] != 0]
        if bad:
            raise ViolatesExceptionality(f"Hom(E{i}, E{j}) has morphisms outside degree 0: {bad}")
        upper[(i, j)] = els
    try:
        return directed_category(size, upper, compositions, provenance=f"exceptional size={size}")
    except NotUpperTriangular as e:  # pragma: no cover - filtered above
        raise ViolatesExceptionality(str(e)) from None


def random_exceptional(size: int, seed: int = 0, max_dim: int = 2) -> AInftyData:
    """Beilinson-style collection: degree-0 homs of random dimension."""
    base = random_directed(size, seed, max_dim, degrees=False)
    return base.replace(provenance=f"random exceptional size={size} seed={seed}")


def exceptional_algebra(size: int, arrows: Mapping[tuple[int, int], int] | None = None) -> AInftyData:
    """The same collection as a one-object algebra B = End(⊕ E_i).

    Basis: idempotents e_i and ``arrows[(i, j)]`` arrows a_ij_t from E_i to
    E_j (i < j), with path composition truncated at length one.
    """
    arrows = dict(arrows or {})
    names = [(f"e{i}", 0) for i in range(1, size + 1)]
    ops = []
    for i in range(1, size + 1):
        ops.append(((f"e{i}", f"e{i}"), f"e{i}", 1))
    for (i, j), dim in sorted(arrows.items()):
        if not i < j:
            raise ViolatesExceptionality(f"arrow E{i} -> E{j} goes against the order")
        for t in range(dim):
            a = f"a{i}{j}_{t}"
            names.append((a, 0))
            ops.append(((f"e{i}", a), a, 1))
            ops.append(((a, f"e{j}"), a, 1))
    return _checked(
        AInftyData.build(["B"], {("B", "B"): names}, ops, suspended=False, provenance=f"exceptional algebra size={size}")
    )


# ---------------------------------------------------------------------------
# Poincaré duality algebras


def _frobenius(basis: Sequence[tuple[str, int]], product: dict, top: str, n: int, label: str) -> AInftyData:
    """``product[(a, b)] = (c, coeff)``; pairing <a, b> = coefficient of ``top`` in ab."""
    ops = [((a, b), c, coeff) for (a, b), (c, coeff) in product.items()]
    data = AInftyData.build(["A"], {("A", "A"): list(basis)}, ops, suspended=False, max_arity=2, provenance=label)
    entries = [(a, b, coeff) for (a, b), (c, coeff) in product.items() if c == top]
    pairing = PairingData.build(data, n, entries, symmetrize=False)
    return _checked(data.replace(pairing=pairing))


def sphere(d: int) -> AInftyData:
    if d < 1:
        raise ValueError("dimension must be positive")
    basis = [("1", 0), ("v", d)]
    prod = {("1", "1"): ("1", 1), ("1", "v"): ("v", 1), ("v", "1"): ("v", 1)}
    return _frobenius(basis, prod, "v", d, f"sphere {d}")


def complex_projective(d: int) -> AInftyData:
    if d < 1:
        raise ValueError("dimension must be positive")
    name = lambda i: "1" if i == 0 else ("h" if i == 1 else f"h{i}")
    basis = [(name(i), 2 * i) for i in range(d + 1)]
    prod = {(name(i), name(j)): (name(i + j), 1) for i in range(d + 1) for j in range(d + 1) if i + j <= d}
    return _frobenius(basis, prod, name(d), 2 * d, f"complex projective {d}")


def exterior(g: int) -> AInftyData:
    if g < 1:
        raise ValueError("need at least one generator")
    subsets = [s for k in range(g + 1) for s in combinations(range(1, g + 1), k)]

    def name(s):
        if not s:
            return "1"
        if g == 1:
            return "x"
        return "".join(f"x{i}" for i in s)

    basis = [(name(s), len(s)) for s in subsets]
    prod = {}
    for s in subsets:
        for t in subsets:
            if set(s) & set(t):
                continue
            inv = sum(1 for a in s for b in t if a > b)
            prod[(name(s), name(t))] = (name(tuple(sorted(s + t))), -1 if inv & 1 else 1)
    return _frobenius(basis, prod, name(tuple(range(1, g + 1))), g, f"exterior {g}")


def frobenius_cohomology(model: str, d: int) -> AInftyData:
    builders = {"sphere": sphere, "complex-projective": complex_projective, "exterior": exterior}
    if model not in builders:
        raise ValueError(f"unknown model {model!r}; choose from {sorted(builders)}")
    return builders[model](d)


# ---------------------------------------------------------------------------
# mutations


def perturb(data: AInftyData, address: tuple, factor) -> AInftyData:
    """Rescale one stored coefficient.

    ``address`` is ``("op", inputs, output)`` for a suspended operation
    coefficient or ``("pair", a, b)`` for a single pairing entry. The result
    is not re-verified: mutations are meant to break things.
    """
    res = _Resolver(data.letters)
    kind = address[0]
    if kind == "op":
        ins = tuple(res(r) for r in address[1])
        out = res(address[2])
        if out not in data.ops.get(ins, {}):
            raise NoSuchCoefficient(f"no coefficient m̄({', '.join(map(str, address[1]))}) -> {address[2]}")
        ops = {k: dict(v) for k, v in data.ops.items()}
        ops[ins][out] *= Fraction(factor)
        return data.replace(ops=ops)
    if kind == "pair":
        a, b = res(address[1]), res(address[2])
        if data.pairing is None or (a, b) not in data.pairing.entries:
            raise NoSuchCoefficient(f"no pairing entry <{address[1]}, {address[2]}>")
        return data.replace(pairing=data.pairing.scaled(a, b, factor))
    raise ValueError(f"unknown address kind {kind!r}")


def coefficient_addresses(data: AInftyData) -> list[tuple]:
    """Every stored coefficient, as addresses accepted by :func:`perturb`."""
    out = [("op", ins, o) for ins, outs in data.ops.items() for o in outs]
    if data.pairing is not None:
        out.extend(("pair", a, b) for (a, b) in data.pairing.entries)
    return out


# ---------------------------------------------------------------------------
# named fixtures


@dataclass(frozen=True)
class FixtureSpec:
    kind: str
    params: Mapping[str, object] = field(default_factory=dict)

    KINDS = ("trivial-k", "directed", "exceptional", "frobenius-cohomology", "perturbed")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown fixture kind {self.kind!r}")

    def build(self) -> AInftyData:
        p = dict(self.params)
        if self.kind == "trivial-k":
            return trivial_k()
        if self.kind == "directed":
            return random_directed(int(p.get("r", 3)), int(p.get("seed", 0)), int(p.get("max_dim", 1)))
        if self.kind == "exceptional":
            return random_exceptional(int(p.get("size", 3)), int(p.get("seed", 0)), int(p.get("max_dim", 2)))
        if self.kind == "frobenius-cohomology":
            return frobenius_cohomology(str(p["model"]), int(p["d"]))
        base = FixtureSpec(**p["base"]).build() if isinstance(p["base"], dict) else p["base"]
        return perturb(base, tuple(p["address"]), p.get("factor", 2))


BUILTIN = {
    "k": FixtureSpec("trivial-k"),
    "s2": FixtureSpec("frobenius-cohomology", {"model": "sphere", "d": 2}),
    "cp2": FixtureSpec("frobenius-cohomology", {"model": "complex-projective", "d": 2}),
    "lambda1": FixtureSpec("frobenius-cohomology", {"model": "exterior", "d": 1}),
    "lambda2": FixtureSpec("frobenius-cohomology", {"model": "exterior", "d": 2}),
    "s3": FixtureSpec("frobenius-cohomology", {"model": "sphere", "d": 3}),
    "directed3": FixtureSpec("directed", {"r": 3, "seed": 0}),
    "exceptional3": FixtureSpec("exceptional", {"size": 3, "seed": 0}),
    "s2-perturbed": FixtureSpec(
        "perturbed",
        {"base": {"kind": "frobenius-cohomology", "params": {"model": "sphere", "d": 2}}, "address": ("op", ("1", "v"), "v")},
    ),
}


def fixture(name: str) -> AInftyData:
    if name not in BUILTIN:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(sorted(BUILTIN))}")
    return BUILTIN[name].build()


__all__ = [
    "BUILTIN",
    "FixtureSpec",
    "InvalidFixture",
    "NoSuchCoefficient",
    "NotUpperTriangular",
    "ViolatesExceptionality",
    "coefficient_addresses",
    "complex_projective",
    "directed_category",
    "exceptional_algebra",
    "exceptional_endomorphism",
    "exterior",
    "fixture",
    "frobenius_cohomology",
    "perturb",
    "random_directed",
    "random_exceptional",
    "sphere",
    "trivial_k",
]
