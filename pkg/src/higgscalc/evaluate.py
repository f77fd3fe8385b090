"""Evaluation of expression syntax into characters, bundles and systems.

Pure bundle expressions evaluate at the character level (products, plethysms,
duals); anything naming a Higgs system (E1, E2, V, U(r)) or a primitive part
evaluates to a realized System first, and the formal bundle is read off the
fiber census.
"""

from __future__ import annotations

from typing import Optional

from . import grammar as g
from .characters import (
    Character,
    ext_power,
    line_character,
    schur_character,
    sym_power,
    unit_character,
)
from .errors import EvalError
from .fiber import DEFAULT_LIMIT
from .labels import FormalBundle, decompose_character, gamma_label
from .systems import (
    System,
    direct_sum,
    dual_system,
    dual_uniformizing,
    end0,
    lift_bundle,
    primitive_part,
    standard_v,
    sym,
    tensor,
    unitary,
    uniformizing,
    wedge,
)


class _NeedsSystem(Exception):
    pass


def _standard(n: int) -> Character:
    return schur_character((1,) + (0,) * (n - 1), 0, n)


def eval_character(expr: g.Expr, n: int) -> Character:
    """Character-level evaluation; raises _NeedsSystem on system atoms."""
    if isinstance(expr, g.Omega):
        if expr.k < 0:
            raise EvalError("negative form degree")
        return ext_power(_standard(n), expr.k)
    if isinstance(expr, g.LPow):
        return line_character(n, expr.e)
    if isinstance(expr, g.Triv):
        return unit_character(n)
    if isinstance(expr, g.Sum):
        acc = Character.from_dict(n, {})
        for part in expr.parts:
            acc = acc + eval_character(part, n)
        return acc
    if isinstance(expr, g.Tensor):
        acc = unit_character(n)
        for part in expr.parts:
            acc = acc * eval_character(part, n)
        return acc
    if isinstance(expr, g.Sym):
        return sym_power(eval_character(expr.arg, n), expr.k)
    if isinstance(expr, g.Wedge):
        return ext_power(eval_character(expr.arg, n), expr.k)
    if isinstance(expr, g.Dual):
        return eval_character(expr.arg, n).dual()
    if isinstance(expr, g.Det):
        chi = eval_character(expr.arg, n)
        return ext_power(chi, chi.total())
    if isinstance(expr, g.End0):
        chi = eval_character(expr.arg, n)
        full = chi * chi.dual()
        unit_key = ((0,) * n, 0)
        if full.as_dict().get(unit_key, 0) < 1:
            raise EvalError("End0 argument has no trivial summand to remove")
        return full - unit_character(n)
    if isinstance(expr, g.Gamma):
        chi = eval_character(expr.arg, n)
        bundle = decompose_character(chi)
        entries = bundle.as_dict()
        if len(entries) != 1:
            raise EvalError("Gamma needs the generator bundle as its argument")
        (label, mult), = entries.items()
        if mult != 1 or label.lam != (1,) + (0,) * (n - 1):
            raise EvalError("Gamma needs the generator bundle as its argument")
        degree = sum((i + 1) * a for i, a in enumerate(expr.indices))
        out = gamma_label(expr.indices, n, label.l_twist * degree)
        return out.character()
    if isinstance(expr, (g.NamedSystem, g.Unitary, g.Primitive)):
        raise _NeedsSystem()
    raise EvalError(f"cannot evaluate {expr!r}")


def contains_system(expr: g.Expr) -> bool:
    if isinstance(expr, (g.NamedSystem, g.Unitary, g.Primitive)):
        return True
    for attr in ("parts",):
        parts = getattr(expr, attr, None)
        if parts:
            return any(contains_system(p) for p in parts)
    arg = getattr(expr, "arg", None)
    if arg is not None:
        return contains_system(arg)
    return False


def eval_system(expr: g.Expr, n: int, limit: int = DEFAULT_LIMIT) -> System:
    """Evaluate to a realized Higgs system (formal parts lift with zero theta)."""
    prov = g.print_expr(expr)
    if isinstance(expr, g.NamedSystem):
        if expr.name == "E1":
            return uniformizing(n)
        if expr.name == "E2":
            return dual_uniformizing(n)
        return standard_v(n)
    if isinstance(expr, g.Unitary):
        return unitary(expr.r, n)
    if isinstance(expr, g.Sum):
        acc = eval_system(expr.parts[0], n, limit)
        for part in expr.parts[1:]:
            acc = direct_sum(acc, eval_system(part, n, limit), provenance=None)
        acc.provenance = prov
        return acc
    if isinstance(expr, g.Tensor):
        acc = eval_system(expr.parts[0], n, limit)
        for part in expr.parts[1:]:
            acc = tensor(acc, eval_system(part, n, limit), limit=limit)
        acc.provenance = prov
        return acc
    if isinstance(expr, g.Sym):
        return sym(eval_system(expr.arg, n, limit), expr.k, provenance=prov, limit=limit)
    if isinstance(expr, g.Wedge):
        return wedge(eval_system(expr.arg, n, limit), expr.k, provenance=prov, limit=limit)
    if isinstance(expr, g.Dual):
        return dual_system(eval_system(expr.arg, n, limit), provenance=prov)
    if isinstance(expr, g.Det):
        inner = eval_system(expr.arg, n, limit)
        return wedge(inner, inner.dimension, provenance=prov, limit=limit)
    if isinstance(expr, g.End0):
        return end0(eval_system(expr.arg, n, limit), provenance=prov, limit=limit)
    if isinstance(expr, g.Primitive):
        return primitive_part(eval_system(expr.arg, n, limit), provenance=prov)
    # Pure formal content: evaluate characters and lift with zero Higgs map.
    try:
        chi = eval_character(expr, n)
    except _NeedsSystem:
        raise EvalError(f"{prov}: this construction needs a formal-bundle argument")
    return lift_bundle(decompose_character(chi), prov, limit)


def eval_bundle(expr: g.Expr, n: int, limit: int = DEFAULT_LIMIT) -> FormalBundle:
    """Formal bundle of an expression (grading forgotten for system inputs)."""
    try:
        chi = eval_character(expr, n)
    except _NeedsSystem:
        system = eval_system(expr, n, limit)
        chi = system.character()
    return decompose_character(chi)


def parse_system(src: str, n: int, limit: int = DEFAULT_LIMIT) -> System:
    return eval_system(g.parse_expr(src), n, limit)


def parse_bundle(src: str, n: int, limit: int = DEFAULT_LIMIT) -> FormalBundle:
    return eval_bundle(g.parse_expr(src), n, limit)
