"""Double-sided diagrams: enumeration, exact contributions, rendering.

A diagram pairs a process ``k`` acting on the ket ``|n,0>`` with a process
``k'`` acting on the bra ``<n,0|``. It contributes to ``Pr(n-2v, v)`` at
order ``gamma^(r+r')`` only if both sides create the same net number ``v``
of SH photons.

Enumeration order is fixed: processes sort by their block tuple, pairs by
``(R, left, right)`` with ``left <= right`` on ``(order, blocks)``. A pair
with ``left != right`` stands for itself plus its conjugate and carries
multiplicity 2.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .fock import RadicalAmplitude, radical_mul
from .processes import (
    CREATE,
    InadmissibleProcess,
    ProcessVector,
    is_admissible,
    net_photons,
    partial_sums,
    process_amplitude,
)


class InvalidPair(ValueError):
    """Raised for a pair whose sides output different SH photon numbers."""


@dataclass(frozen=True)
class DiagramPair:
    """Process superposition ``A_left |n,0><n,0| A_right^dagger``.

    ``multiplicity`` defaults to 1 for ``left == right`` and 2 otherwise
    (the diagram plus its complex conjugate). The stored orientation is
    whatever the caller passed; :meth:`canonical` gives the representative
    emitted by :func:`enumerate_pairs`.
    """

    left: ProcessVector
    right: ProcessVector
    multiplicity: int = field(default=0)

    def __post_init__(self):
        left = self.left if isinstance(self.left, ProcessVector) else ProcessVector(self.left)
        right = self.right if isinstance(self.right, ProcessVector) else ProcessVector(self.right)
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)
        for side in (left, right):
            if not is_admissible(side):
                raise InadmissibleProcess(f"{side!r} drives the SH occupation negative")
        if net_photons(left) != net_photons(right):
            raise InvalidPair(
                f"{left} outputs {net_photons(left)} SH photons, {right} outputs {net_photons(right)}"
            )
        if self.multiplicity == 0:
            object.__setattr__(self, "multiplicity", 1 if left == right else 2)
        elif self.multiplicity not in (1, 2):
            raise ValueError("multiplicity must be 1 or 2")

    @property
    def left_order(self) -> int:
        return self.left.order

    @property
    def right_order(self) -> int:
        return self.right.order

    @property
    def order(self) -> int:
        return self.left.order + self.right.order

    @property
    def net_v(self) -> int:
        return net_photons(self.left)

    def canonical(self) -> "DiagramPair":
        if self.right < self.left:
            return DiagramPair(self.right, self.left, self.multiplicity)
        return self

    def conjugate(self) -> "DiagramPair":
        return DiagramPair(self.right, self.left, self.multiplicity)

    def __str__(self):
        return f"{{{self.left}, {self.right}}} x{self.multiplicity}"


@dataclass(frozen=True)
class SeriesTerm:
    target_v: int
    gamma_power: int
    coefficient: Fraction


def _words(r: int):
    """Admissible +1/-1 words of length r (running sum stays >= 0)."""
    def rec(prefix, height):
        if len(prefix) == r:
            yield tuple(prefix)
            return
        for step in (CREATE, -CREATE):
            if height + step >= 0:
                prefix.append(step)
                yield from rec(prefix, height + step)
                prefix.pop()
    yield from rec([], 0)


@lru_cache(maxsize=None)
def _processes(r: int) -> tuple[ProcessVector, ...]:
    return tuple(sorted((ProcessVector.from_word(w) for w in _words(r)), key=lambda p: p.blocks))


def enumerate_processes(r: int) -> list[ProcessVector]:
    """All admissible processes of order ``r``, sorted by block tuple."""
    if r < 0:
        raise ValueError("order must be nonnegative")
    return list(_processes(r))


@lru_cache(maxsize=None)
def _pairs(R: int) -> tuple[DiagramPair, ...]:
    by_v: dict[int, dict[int, list[ProcessVector]]] = {}
    for r in range(R + 1):
        for k in _processes(r):
            by_v.setdefault(r, {}).setdefault(net_photons(k), []).append(k)
    out = []
    for r in range(R // 2 + 1):
        rp = R - r
        for v, lefts in by_v[r].items():
            for left in lefts:
                for right in by_v[rp].get(v, ()):
                    if left <= right:
                        out.append(DiagramPair(left, right))
    out.sort(key=lambda p: (p.left, p.right))
    return tuple(out)


def enumerate_pairs(R: int) -> list[DiagramPair]:
    """Canonical diagrams at order ``R`` with matching net SH photons."""
    if R < 0 or R % 2:
        raise ValueError(f"diagram order must be even and nonnegative, got {R}")
    return list(_pairs(R))


@lru_cache(maxsize=65536)
def _amplitude(blocks: tuple[int, ...], n: int) -> RadicalAmplitude:
    return process_amplitude(ProcessVector(blocks), n)


def diagram_term(pair: DiagramPair, n: int) -> SeriesTerm:
    """Exact contribution of one pair (times its multiplicity) to the
    coefficient of ``gamma^R`` in ``Pr(n-2v, v)``."""
    if not isinstance(pair, DiagramPair):
        left, right = pair
        if net_photons(left) != net_photons(right):
            raise InvalidPair(f"{left} and {right} output different SH photon numbers")
        pair = DiagramPair(left, right)
    r, rp = pair.left_order, pair.right_order
    # i^r (-i)^r' = (-1)^((r - r')/2) since r and r' share parity
    sign = -1 if ((r - rp) // 2) % 2 else 1
    overlap = radical_mul(_amplitude(pair.left.blocks, n), _amplitude(pair.right.blocks, n))
    coeff = Fraction(sign * pair.multiplicity) * overlap / (factorial(r) * factorial(rp))
    return SeriesTerm(pair.net_v, pair.order, coeff)


def probability_term(k, n: int) -> SeriesTerm:
    """Diagonal diagram ``(k, k)``: probability weight of process ``k`` alone."""
    k = k if isinstance(k, ProcessVector) else ProcessVector(k)
    if not is_admissible(k):
        raise InadmissibleProcess(f"{k!r} drives the SH occupation negative")
    return diagram_term(DiagramPair(k, k, 1), n)


# -- rendering ---------------------------------------------------------------

def _state_label(K: int) -> str:
    return ("n" if K == 0 else f"n-{2 * K}") + f",{K}"


def _side_lines(k: ProcessVector, bra: bool) -> list[str]:
    """Lines of one side, top to bottom."""
    def lbl(K):
        return f"<{_state_label(K)}|" if bra else f"|{_state_label(K)}>"

    K = partial_sums(k)
    lines = [lbl(K[-1] if K else 0), "  ~"]
    for j in range(k.length, 0, -1):
        mult = k.blocks[j - 1]
        lines.append("  o" + (f" {mult}" if mult > 1 else ""))
        # propagator between vertices, labelled with the intermediate state
        lines.append("  ~   " + lbl(K[j - 2]) if j > 1 else "  ~")
    lines.append(lbl(0))
    return lines


def render_ascii(pair: DiagramPair) -> str:
    """Fixed-width two-column text rendering, ket left and bra right.

    Time runs bottom to top. ``o`` marks a vertex, a trailing number its
    multiplicity (shown when larger than 1), ``~`` a field propagator.
    """
    left = _side_lines(pair.left, bra=False)
    right = _side_lines(pair.right, bra=True)
    height = max(len(left), len(right))
    # stretch the shorter column just below its output label
    for col in (left, right):
        while len(col) < height:
            col.insert(1, "  ~")
    ket = f"ket k=({','.join(map(str, pair.left.blocks))}) r={pair.left_order}"
    bra = f"bra k'=({','.join(map(str, pair.right.blocks))}) r'={pair.right_order}"
    width = max(24, len(ket) + 2, max(len(s) for s in left) + 2)
    out = [f"{ket:<{width}}| {bra}", "-" * width + "+" + "-" * (len(bra) + 1)]
    for a, b in zip(left, right):
        out.append(f"{a:<{width}}| {b}".rstrip())
    out.append(f"R={pair.order} mult={pair.multiplicity} v={pair.net_v}")
    return "\n".join(out) + "\n"


LATEX_PREAMBLE = r"""\documentclass[tikz,border=4pt]{standalone}
\usepackage[compat=1.1.0]{tikz-feynhand}
"""


def _latex_side(k: ProcessVector, x0: float, bra: bool, height: float, tag: str) -> list[str]:
    """TikZ-FeynHand commands for one side, field line and atom line.

    Ket side: field at x0, atom at x0+1, vertices on the atom line. The bra
    side is mirrored and every arrow reversed.
    """
    fx, ax = (x0 + 1, x0) if bra else (x0, x0 + 1)
    K = partial_sums(k)
    l = k.length

    def st(Kv):
        lab = _state_label(Kv)
        return rf"$\langle {lab}|$" if bra else rf"$|{lab}\rangle$"

    def prop(style, a, b, bend=""):
        a, b = (b, a) if bra else (a, b)
        return rf"\propag [{style}] ({a}) to {bend}({b});"

    g = r"$\langle g|$" if bra else r"$|g\rangle$"
    side = 1 if bra else -1
    cmds = [
        rf"\vertex ({tag}fi) at ({fx:g},0);",
        rf"\vertex ({tag}ai) at ({ax:g},0);",
        rf"\vertex ({tag}fo) at ({fx:g},{height:g});",
        rf"\vertex ({tag}ao) at ({ax:g},{height:g});",
    ]
    if l == 0:
        cmds.append(prop("chabos", f"{tag}fi", f"{tag}fo"))
        cmds.append(prop("fer", f"{tag}ai", f"{tag}ao"))
    else:
        step = height / (l + 1)
        vx = ax
        for j in range(1, l + 1):
            cmds.append(rf"\vertex [dot] ({tag}v{j}) at ({vx:g},{j * step:g}) {{}};")
        cmds.append(prop("chabos", f"{tag}fi", f"{tag}v1"))
        cmds.append(prop("fer", f"{tag}ai", f"{tag}v1"))
        bend = "[out=180, in=180] " if bra else "[out=0, in=0] "
        for j in range(1, l):
            cmds.append(prop("chabos", f"{tag}v{j}", f"{tag}v{j + 1}"))
            cmds.append(prop("fer", f"{tag}v{j}", f"{tag}v{j + 1}", bend))
            mid = (j + 0.5) * step
            lx = fx + 0.7 if bra else fx - 0.3
            cmds.append(rf"\node at ({lx:g},{mid:g}) {{{st(K[j - 1])}}};")
        # external lines point at the vertex on the ket side, away on the bra side
        cmds.append(prop("fer", f"{tag}ao", f"{tag}v{l}"))
        cmds.append(prop("chabos", f"{tag}fo", f"{tag}v{l}"))
        for j in range(1, l + 1):
            if k.blocks[j - 1] > 1:
                cmds.append(rf"\node at ({vx + side * 0.3:g},{j * step + 0.1:g}) {{{k.blocks[j - 1]}}};")
    lab_x = fx + 0.6 * side if bra else fx - 0.6
    glab_x = ax - 0.5 if bra else ax + 0.5
    cmds += [
        rf"\node at ({lab_x:g},0) {{{st(0)}}};",
        rf"\node at ({lab_x:g},{height:g}) {{{st(K[-1] if K else 0)}}};",
        rf"\node at ({glab_x:g},0) {{{g}}};",
        rf"\node at ({glab_x:g},{height:g}) {{{g}}};",
    ]
    return cmds


def render_latex(pair: DiagramPair) -> str:
    """Standalone LaTeX source (TikZ-FeynHand) for one double-sided diagram.

    Wiggly ``chabos`` lines carry the field state, plain ``fer`` lines the
    atomic ground state, dots are vertices with multiplicities set beside.
    """
    height = float(max(pair.left.length, pair.right.length, 1) + 1)
    body = _latex_side(pair.left, 0.0, False, height, "L")
    body += _latex_side(pair.right, 2.5, True, height, "R")
    caption = (
        rf"\node at (1.75,-0.6) {{$\mathbf{{k}}=({','.join(map(str, pair.left.blocks))}),\ "
        rf"\mathbf{{k'}}=({','.join(map(str, pair.right.blocks))})$}};"
    )
    lines = [
        LATEX_PREAMBLE.rstrip("\n"),
        r"\begin{document}",
        r"\begin{tikzpicture}",
        r"\begin{feynhand}",
        *body,
        caption,
        r"\end{feynhand}",
        r"\end{tikzpicture}",
        r"\end{document}",
    ]
    return "\n".join(lines) + "\n"
