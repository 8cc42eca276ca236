"""Parser for the textual group-spec grammar.

    spec  := atom decorator* | spec "wr" spec ("@imprimitive" | "@product")
    atom  := name ":" params | "perm:" degree ":" "[" perm ("," perm)* "]"

Atoms: sym:n, alt:n, cyclic:n, dihedral:n, mathieu:11|12, agl1:q,
agammal1:q (affine1:q is an alias of agl1), agl:d,q, psl:d,q, pgl:d,q,
pgammal:d,q, gl:d,q, sl:d,q, sp:d,q, gu:d,q, go:eps,d,q, and literal
generator lists via perm:.  Decorators: @natural, @regular,
@ksubsets:k, @grass:k, @isotropic:k, @nondeg:[subtype,]k,
@cosets:[...].  Case- and whitespace-insensitive; points are 0-based.
"""

from __future__ import annotations

from typing import Optional

from .group import PermGroup
from .perm import Permutation, parse_cycles
from .zoo import (
    GroupAction,
    action_on_ksubsets,
    affine,
    affine1,
    alternating,
    classical_action,
    coset_action,
    cyclic,
    dihedral,
    mathieu,
    projective_linear,
    regular_action,
    symmetric,
    wreath_imprimitive,
    wreath_product_action,
)

MATRIX_FAMILIES = ("gl", "sl", "sp", "gu", "go")


class SpecError(ValueError):
    def __init__(self, message: str, position: Optional[int] = None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


def parse_group_spec(text: str) -> GroupAction:
    """Elaborate a group-spec string into a transitive labeled action."""
    squeezed = "".join(text.split()).lower()
    if not squeezed:
        raise SpecError("empty group spec")
    return _parse_expr(squeezed, 0)


def _find_top_level(s: str, token: str) -> list[int]:
    out = []
    depth = 0
    i = 0
    while i < len(s):
        c = s[i]
        if c in "([":
            depth += 1
        elif c in ")]":
            depth -= 1
        elif depth == 0 and s.startswith(token, i):
            out.append(i)
        i += 1
    return out


def _parse_expr(s: str, offset: int) -> GroupAction:
    wr_positions = _find_top_level(s, "wr")
    if wr_positions:
        pos = wr_positions[-1]
        left_text = s[:pos]
        right_text = s[pos + 2:]
        kind = None
        for suffix, k in (("@imprimitive", "imprimitive"), ("@product", "product")):
            if right_text.endswith(suffix):
                kind = k
                right_text = right_text[: -len(suffix)]
                break
        if kind is None:
            raise SpecError(
                "wreath spec needs a trailing @imprimitive or @product",
                offset + len(s),
            )
        if not left_text or not right_text:
            raise SpecError("wreath spec needs two operands", offset + pos)
        left = _parse_expr(left_text, offset)
        right = _parse_expr(right_text, offset + pos + 2)
        if kind == "imprimitive":
            return wreath_imprimitive(left, right)
        return wreath_product_action(left, right)
    return _parse_atom_chain(s, offset)


def _split_decorators(s: str) -> list[str]:
    cuts = _find_top_level(s, "@")
    parts = []
    prev = 0
    for c in cuts:
        parts.append(s[prev:c])
        prev = c + 1
    parts.append(s[prev:])
    return parts


def _parse_atom_chain(s: str, offset: int) -> GroupAction:
    parts = _split_decorators(s)
    atom_text, decorators = parts[0], parts[1:]
    if not atom_text:
        raise SpecError("missing atom before decorator", offset)
    name, _, params = atom_text.partition(":")
    if name in MATRIX_FAMILIES:
        action, used = _elaborate_matrix(name, params, decorators, offset)
        decorators = decorators[used:]
    else:
        action = _elaborate_point_atom(name, params, atom_text, offset)
    for dec in decorators:
        action = _apply_decorator(action, dec, offset)
    return action


def _int_params(params: str, count: int, name: str, offset: int) -> list[int]:
    items = params.split(",") if params else []
    if len(items) != count:
        raise SpecError(f"{name} expects {count} parameter(s)", offset)
    try:
        return [int(x) for x in items]
    except ValueError:
        raise SpecError(f"bad integer parameter in {name}:{params}", offset)


def _elaborate_point_atom(name: str, params: str, atom_text: str,
                          offset: int) -> GroupAction:
    if name == "sym":
        return symmetric(_int_params(params, 1, name, offset)[0])
    if name == "alt":
        return alternating(_int_params(params, 1, name, offset)[0])
    if name == "cyclic":
        return cyclic(_int_params(params, 1, name, offset)[0])
    if name == "dihedral":
        return dihedral(_int_params(params, 1, name, offset)[0])
    if name == "mathieu":
        return mathieu(_int_params(params, 1, name, offset)[0])
    if name in ("affine1", "agl1"):
        return affine1(_int_params(params, 1, name, offset)[0])
    if name == "agammal1":
        return affine1(_int_params(params, 1, name, offset)[0], semilinear=True)
    if name == "agl":
        d, q = _int_params(params, 2, name, offset)
        return affine(d, q)
    if name in ("psl", "pgl", "pgammal"):
        d, q = _int_params(params, 2, name, offset)
        return projective_linear(name, d, q)
    if name == "perm":
        return _elaborate_literal(params, offset)
    raise SpecError(f"unknown atom {name!r}", offset)


def _elaborate_literal(params: str, offset: int) -> GroupAction:
    degree_text, _, rest = params.partition(":")
    try:
        degree = int(degree_text)
    except ValueError:
        raise SpecError("perm: needs a degree", offset)
    if not (rest.startswith("[") and rest.endswith("]")):
        raise SpecError("perm: needs a bracketed generator list", offset)
    body = rest[1:-1]
    items = []
    depth = 0
    prev = 0
    for i, c in enumerate(body):
        if c == "(":
            depth += 1
        elif c == ")":
            depth -= 1
        elif c == "," and depth == 0:
            items.append(body[prev:i])
            prev = i + 1
    items.append(body[prev:])
    gens = []
    for item in items:
        if not item:
            continue
        gens.append(parse_cycles(item, degree))
    if not gens:
        raise SpecError("perm: needs at least one generator", offset)
    from .domains import LabeledDomain

    grp = PermGroup(gens, degree)
    act = GroupAction(grp, LabeledDomain.points(degree), f"perm:{degree}")
    if not grp.is_transitive():
        raise SpecError("literal generator list is not transitive", offset)
    return act


def _elaborate_matrix(name: str, params: str, decorators: list[str],
                      offset: int) -> tuple[GroupAction, int]:
    if name == "go":
        items = params.split(",")
        if len(items) != 3 or items[0] not in ("+", "-", "o"):
            raise SpecError("go expects parameters eps,d,q with eps in +,-,o",
                            offset)
        family = "go" + items[0] if items[0] != "o" else "goo"
        d, q = int(items[1]), int(items[2])
    else:
        d, q = _int_params(params, 2, name, offset)
        family = name
    if not decorators:
        raise SpecError(
            f"matrix atom {name} needs a domain decorator "
            "(@grass:k, @isotropic:k or @nondeg:k)", offset)
    dec = decorators[0]
    dname, _, dparams = dec.partition(":")
    if dname == "grass":
        k = _int_params(dparams, 1, "grass", offset)[0]
        return classical_action(family, d, q, "grass", k), 1
    if dname == "isotropic":
        k = _int_params(dparams, 1, "isotropic", offset)[0]
        return classical_action(family, d, q, "isotropic", k), 1
    if dname == "nondeg":
        items = dparams.split(",") if dparams else []
        if len(items) == 1:
            return classical_action(family, d, q, "nondeg", int(items[0])), 1
        if len(items) == 2 and items[0] in ("hyperbolic", "parabolic",
                                            "elliptic"):
            return classical_action(family, d, q, "nondeg", int(items[1]),
                                    subtype=items[0]), 1
        raise SpecError("nondeg expects k or subtype,k", offset)
    raise SpecError(
        f"matrix atom {name} needs @grass/@isotropic/@nondeg first, "
        f"got @{dname}", offset)


def _apply_decorator(action: GroupAction, dec: str, offset: int) -> GroupAction:
    dname, _, dparams = dec.partition(":")
    if dname == "natural":
        return action
    if dname == "regular":
        return regular_action(action)
    if dname == "ksubsets":
        k = _int_params(dparams, 1, "ksubsets", offset)[0]
        return action_on_ksubsets(action, k)
    if dname == "cosets":
        if not (dparams.startswith("[") and dparams.endswith("]")):
            raise SpecError("cosets expects a bracketed generator list", offset)
        body = dparams[1:-1]
        gens = []
        depth = 0
        prev = 0
        items = []
        for i, c in enumerate(body):
            if c == "(":
                depth += 1
            elif c == ")":
                depth -= 1
            elif c == "," and depth == 0:
                items.append(body[prev:i])
                prev = i + 1
        items.append(body[prev:])
        for item in items:
            if item:
                gens.append(parse_cycles(item, action.degree))
        if not gens:
            raise SpecError("cosets needs at least one generator", offset)
        subgroup = PermGroup(gens, action.degree)
        return coset_action(action, subgroup)
    raise SpecError(f"unknown decorator @{dname}", offset)
