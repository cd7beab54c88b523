"""Orbifold signatures, words in the orbifold fundamental group, and
surface-kernel actions of a finite group.

A closed orientable 2-orbifold with signature ``(genus, boundary;
m_1, ..., m_k)`` has the standard presentation with one generator ``x_i``
per cone point (of order ``m_i``) and handle generators ``a_i, b_i`` when
the genus is positive, subject to the long relation
``x_1 ... x_k [a_1, b_1] ... [a_g, b_g] = 1``.  A group action on a covering
surface is encoded by the images of these generators.

All Euler characteristic arithmetic is exact (``fractions.Fraction``).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .groups import GroupElement, GroupTable, closure

__all__ = [
    "OrbifoldSignature",
    "Word",
    "SurfaceKernelAction",
    "NoSuchStratumError",
    "euler_characteristic",
    "is_hyperbolic",
    "validate_action",
    "evaluate_word",
    "riemann_hurwitz_genus",
    "stratum_dimension",
]


@dataclass(frozen=True)
class OrbifoldSignature:
    """Signature (genus, boundary; cone orders) of a 2-orbifold.

    ``cone_orders`` keeps its input order: cone points are referred to by
    their 1-based position elsewhere in the package.
    """

    genus: int
    boundary: int = 0
    cone_orders: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "cone_orders", tuple(int(m) for m in self.cone_orders))
        if self.genus < 0:
            raise ValueError("genus must be non-negative")
        if self.boundary < 0:
            raise ValueError("boundary count must be non-negative")
        for m in self.cone_orders:
            if m < 2:
                raise ValueError(f"cone orders must be at least 2, got {m}")

    @property
    def cone_count(self) -> int:
        return len(self.cone_orders)

    @property
    def generator_count(self) -> int:
        """Cone generators plus two handle generators per unit of genus."""
        return self.cone_count + 2 * self.genus

    def generator_name(self, index: int) -> str:
        k = self.cone_count
        if 0 <= index < k:
            return f"x{index + 1}"
        h = index - k
        if 0 <= h < 2 * self.genus:
            return f"{'ab'[h % 2]}{h // 2 + 1}"
        raise ValueError(f"generator index {index} out of range")

    def generator_index(self, name: str) -> int:
        match = re.fullmatch(r"([xab])([1-9][0-9]*)", name)
        if not match:
            raise ValueError(f"bad generator name {name!r}")
        kind, num = match.group(1), int(match.group(2))
        k = self.cone_count
        if kind == "x":
            if num > k:
                raise ValueError(f"generator {name!r} exceeds the {k} cone generators")
            return num - 1
        if num > self.genus:
            raise ValueError(f"generator {name!r} exceeds the genus {self.genus}")
        return k + 2 * (num - 1) + (0 if kind == "a" else 1)


def euler_characteristic(signature: OrbifoldSignature) -> Fraction:
    """Exact orbifold Euler characteristic of a signature."""
    chi = Fraction(2 - 2 * signature.genus - signature.boundary)
    for m in signature.cone_orders:
        chi -= 1 - Fraction(1, m)
    return chi


def is_hyperbolic(signature: OrbifoldSignature) -> bool:
    return euler_characteristic(signature) < 0


_TOKEN_RE = re.compile(r"([xab][1-9][0-9]*)(?:\^(-?[1-9][0-9]*))?$")


@dataclass(frozen=True)
class Word:
    """A word in the generators of an orbifold fundamental group.

    Letters are pairs ``(generator index, sign)`` with sign +1 or -1.  The
    generator indexing is that of :class:`OrbifoldSignature`.  Text syntax is
    whitespace-separated tokens like ``x3``, ``x3^-1``, ``a1``, ``b2^-2``;
    an exponent repeats the letter.
    """

    letters: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(
            self, "letters", tuple((int(g), int(s)) for g, s in self.letters)
        )
        for g, s in self.letters:
            if s not in (-1, 1):
                raise ValueError(f"letter sign must be +1 or -1, got {s}")
            if g < 0:
                raise ValueError(f"negative generator index {g}")

    def __len__(self) -> int:
        return len(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def concat(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word(tuple((g, -s) for g, s in reversed(self.letters)))

    @staticmethod
    def parse(text: str, signature: OrbifoldSignature) -> "Word":
        letters: list[tuple[int, int]] = []
        for token in text.split():
            match = _TOKEN_RE.fullmatch(token)
            if not match:
                raise ValueError(f"bad word token {token!r}")
            index = signature.generator_index(match.group(1))
            exponent = int(match.group(2)) if match.group(2) else 1
            sign = 1 if exponent > 0 else -1
            letters.extend([(index, sign)] * abs(exponent))
        return Word(tuple(letters))

    def to_text(self, signature: OrbifoldSignature) -> str:
        tokens: list[str] = []
        i = 0
        letters = self.letters
        while i < len(letters):
            gen, sign = letters[i]
            run = 1
            while i + run < len(letters) and letters[i + run] == (gen, sign):
                run += 1
            exponent = sign * run
            name = signature.generator_name(gen)
            tokens.append(name if exponent == 1 else f"{name}^{exponent}")
            i += run
        return " ".join(tokens)


@dataclass(frozen=True)
class SurfaceKernelAction:
    """A finite group action on a surface, encoded over the quotient orbifold.

    ``images`` lists one group element index per presentation generator of
    the closed signature (cone generators first, then handle generators).
    Structural well-formedness is enforced here; the epimorphism conditions
    themselves are checked by :func:`validate_action`.
    """

    group: GroupTable
    signature: OrbifoldSignature
    images: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(int(i) for i in self.images))
        if self.signature.boundary != 0:
            raise ValueError("an action is defined over a closed signature")
        expected = self.signature.generator_count
        if len(self.images) != expected:
            raise ValueError(
                f"expected {expected} generator images, got {len(self.images)}"
            )
        for i in self.images:
            if not 0 <= i < self.group.order:
                raise ValueError(f"image index {i} out of range for the group")

    def image_element(self, generator_index: int) -> GroupElement:
        return self.group.element(self.images[generator_index])


def evaluate_word(action: SurfaceKernelAction, word: Word) -> GroupElement:
    """Image of a word under the action's homomorphism (left-to-right)."""
    group = action.group
    count = action.signature.generator_count
    result = group.identity
    for gen, sign in word.letters:
        if gen >= count:
            raise ValueError(f"word uses generator index {gen}, presentation has {count}")
        image = action.images[gen]
        if sign < 0:
            image = group.inverse[image]
        result = group.table[result][image]
    return group.element(result)


def validate_action(action: SurfaceKernelAction) -> list[str]:
    """Check the surface-kernel conditions; return all violations.

    An empty list means the action is valid: every cone generator maps to an
    element of exactly its cone order, the long relation maps to the
    identity, and the images generate the whole group.
    """
    violations: list[str] = []
    group = action.group
    signature = action.signature
    k = signature.cone_count

    for i, m in enumerate(signature.cone_orders):
        got = group.element(action.images[i]).order()
        if got != m:
            violations.append(
                f"generator x{i + 1}: image {group.names[action.images[i]]} "
                f"has order {got}, expected {m}"
            )

    product = group.identity
    for i in range(k):
        product = group.table[product][action.images[i]]
    for h in range(signature.genus):
        a = action.images[k + 2 * h]
        b = action.images[k + 2 * h + 1]
        commutator = group.table[group.table[a][b]][
            group.table[group.inverse[a]][group.inverse[b]]
        ]
        product = group.table[product][commutator]
    if product != group.identity:
        violations.append(
            f"long relation maps to {group.names[product]}, not the identity"
        )

    generated = closure([group.element(i) for i in action.images])
    if generated.order != group.order:
        violations.append(
            f"images generate a proper subgroup of order {generated.order} "
            f"(group has order {group.order})"
        )
    return violations


def riemann_hurwitz_genus(action: SurfaceKernelAction) -> int:
    """Genus of the covering surface: 1 - |G| * chi(quotient) / 2.

    A fractional or negative result means the input data is inconsistent.
    """
    chi = euler_characteristic(action.signature)
    genus = 1 - Fraction(action.group.order) * chi / 2
    if genus.denominator != 1 or genus < 0:
        raise ValueError(f"covering genus {genus} is not a non-negative integer")
    return int(genus)


class NoSuchStratumError(ValueError):
    """Raised when the requested boundary stratum has negative dimension."""


def stratum_dimension(signature: OrbifoldSignature, pinched: int) -> int:
    """Dimension of the stratum reached by pinching ``pinched`` curves.

    For a closed signature of genus t with r cone points this is
    ``3t - 3 + r - pinched``.
    """
    if signature.boundary != 0:
        raise ValueError("stratum dimension is defined for closed signatures")
    if pinched < 0:
        raise ValueError("pinched curve count must be non-negative")
    dim = 3 * signature.genus - 3 + signature.cone_count - pinched
    if dim < 0:
        raise NoSuchStratumError(
            f"no such stratum: dimension would be {dim}"
        )
    return dim
