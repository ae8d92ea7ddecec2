"""Named built-in pairs and a config-file loader.

Built-ins: bost_connes, inversion(n), flip, gl2q_plus_sl2z, sl2_z_inv_p(p),
free_non_hecke.  Config files use a flat INI format with [group], [subgroup]
and [meta] sections; membership rules come from a fixed vocabulary and never
execute user logic.
"""

from __future__ import annotations

import configparser
import math
import random
import re
from fractions import Fraction

from .errors import BadParameter, ParseError, UnknownName, ValidationError
from .groups import (
    AxBGroup,
    FiniteGroup,
    FreeGroup,
    Mat2Group,
    SemidirectGroup,
    Subgroup,
    cyclic_group,
    dihedral_group,
    direct_product_z2_z2,
    mat,
    subgroup_check,
    symmetric_group,
    word_reduce,
)
from .pairs import Pair

# ---------------------------------------------------------------------------
# canonicalizers


def bost_connes_canonicalizer(x):
    """Hx for H = integer translations: (a, b mod a) with the rep in [0, a)."""
    a, b = x
    return (Fraction(a), Fraction(b) - (Fraction(b) / a).__floor__() * Fraction(a))


def sl2z_hnf_canonicalizer(x):
    """Canonical form of SL2(Z)*x for a rational 2x2 matrix with det > 0.

    Scale by the lcm q of the entry denominators (invariant under integer
    left multiplication), then bring q*x to Hermite-like normal form
    [[a, b], [0, d]] with a, d > 0 and 0 <= b < d using det-1 row moves.
    """
    (p11, p12), (p21, p22) = x
    q = math.lcm(*(Fraction(v).denominator for v in (p11, p12, p21, p22)))
    r1 = [int(p11 * q), int(p12 * q)]
    r2 = [int(p21 * q), int(p22 * q)]
    while r2[0] != 0:
        k = r1[0] // r2[0]
        r1 = [r1[0] - k * r2[0], r1[1] - k * r2[1]]
        r1, r2 = r2, [-r1[0], -r1[1]]
    if r1[0] < 0:
        r1 = [-r1[0], -r1[1]]
        r2 = [-r2[0], -r2[1]]
    if r2[1] < 0:
        # det > 0 and a > 0 force d > 0; reaching here means bad input
        raise AssertionError("normal form failed; determinant not positive?")
    k = r1[1] // r2[1]
    r1 = [r1[0], r1[1] - k * r2[1]]
    return (r1[0], r1[1], r2[1], q)


def free_strip_canonicalizer(x):
    """Hw for H = <a>: drop the maximal leading power of the first generator."""
    w = word_reduce(x)
    i = 0
    while i < len(w) and abs(w[i]) == 1:
        i += 1
    return w[i:]


_CANONICALIZERS = {
    "bost_connes": bost_connes_canonicalizer,
    "sl2z-hnf": sl2z_hnf_canonicalizer,
    "free-strip": free_strip_canonicalizer,
    "finite-min": None,  # the Pair default for finite groups
    "none": None,
}


# ---------------------------------------------------------------------------
# built-in pairs

_S = mat(0, -1, 1, 0)
_T = mat(1, 1, 0, 1)


def _axb(a, b):
    return (Fraction(a), Fraction(b))


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _bost_connes() -> Pair:
    group = AxBGroup(
        name="bost_connes_G",
        generators=(_axb(1, 1), _axb(2, 0), _axb(Fraction(1, 2), 0)),
    )

    def membership(x):
        a, b = x
        return a == 1 and Fraction(b).denominator == 1

    sub = Subgroup(
        parent=group,
        membership=membership,
        generators=(_axb(1, 1),),
        is_finite=False,
        name="Z",
    )
    return Pair(
        group=group,
        subgroup=sub,
        name="bost_connes",
        canonicalizer=bost_connes_canonicalizer,
        sample_elements=(
            _axb(2, 0),
            _axb(3, 0),
            _axb(Fraction(1, 2), 0),
            _axb(Fraction(2, 3), Fraction(1, 3)),
            _axb(1, Fraction(1, 2)),
        ),
    )


def _inversion(n: int) -> Pair:
    if n < 1:
        raise BadParameter(f"inversion(n) needs n >= 1, got {n}")
    normal = cyclic_group(n)
    group = SemidirectGroup(
        normal,
        lambda eps, k: k if eps == 1 else (-k) % n,
        name=f"Z/{n}:inv",
        generators=((1 % n, 1), (0, -1)),
    )
    sub = Subgroup(
        parent=group,
        membership=lambda x: x[0] == 0,
        generators=((0, -1),),
        is_finite=True,
        name="Z/2",
    )
    return Pair(group=group, subgroup=sub, name=f"inversion({n})")


def _flip() -> Pair:
    normal = direct_product_z2_z2()
    group = SemidirectGroup(
        normal,
        lambda eps, v: v if eps == 1 else (v[1], v[0]),
        name="(Z/2xZ/2):flip",
        generators=(((1, 0), 1), ((0, 0), -1)),
    )
    sub = Subgroup(
        parent=group,
        membership=lambda x: x[0] == (0, 0),
        generators=(((0, 0), -1),),
        is_finite=True,
        name="Z/2",
    )
    return Pair(group=group, subgroup=sub, name="flip")


def _sl2z_subgroup(group) -> Subgroup:
    def membership(x):
        (a, b), (c, d) = x
        return (
            all(Fraction(v).denominator == 1 for v in (a, b, c, d))
            and a * d - b * c == 1
        )

    return Subgroup(
        parent=group,
        membership=membership,
        generators=(_S, _T),
        is_finite=False,
        name="SL2(Z)",
    )


def _gl2q_plus() -> Pair:
    group = Mat2Group(
        name="GL2(Q)+",
        generators=(_S, _T, mat(1, 0, 0, 2), mat(1, 0, 0, 3)),
    )
    return Pair(
        group=group,
        subgroup=_sl2z_subgroup(group),
        name="gl2q_plus_sl2z",
        canonicalizer=sl2z_hnf_canonicalizer,
        sample_elements=(
            mat(1, 0, 0, 2),
            mat(1, 0, 0, 3),
            mat(2, 0, 0, 2),
            _T,
        ),
    )


def _sl2_z_inv_p(p: int) -> Pair:
    if not _is_prime(p):
        raise BadParameter(f"sl2_z_inv_p(p) needs a prime p, got {p}")
    group = Mat2Group(
        name=f"SL2(Z[1/{p}])",
        generators=(_S, _T, mat(p, 0, 0, Fraction(1, p))),
    )
    return Pair(
        group=group,
        subgroup=_sl2z_subgroup(group),
        name=f"sl2_z_inv_p({p})",
        canonicalizer=sl2z_hnf_canonicalizer,
        sample_elements=(mat(p, 0, 0, Fraction(1, p)), _T, _S),
    )


def _free_non_hecke() -> Pair:
    group = FreeGroup(2, name="F2")
    sub = Subgroup(
        parent=group,
        membership=lambda w: all(abs(x) == 1 for x in w),
        generators=((1,),),
        is_finite=False,
        name="<a>",
    )
    return Pair(
        group=group,
        subgroup=sub,
        name="free_non_hecke",
        canonicalizer=free_strip_canonicalizer,
        sample_elements=((2,), (1,)),
    )


def _d4_center() -> Pair:
    group = dihedral_group(4)
    sub = Subgroup(
        parent=group,
        membership=lambda x: x in ((0, 0), (2, 0)),
        generators=((2, 0),),
        is_finite=True,
        name="Z(D4)",
    )
    return Pair(group=group, subgroup=sub, name="d4_center")


def _cyclic_pair(n: int, m: int, name: str) -> Pair:
    """(Z/n, Z/m) for m | n, with H generated by n // m."""
    group = cyclic_group(n)
    step = n // m
    sub = Subgroup(
        parent=group,
        membership=lambda x: x % step == 0,
        generators=(step,),
        is_finite=True,
        name=f"Z/{m}",
    )
    return Pair(group=group, subgroup=sub, name=name)


_BUILTIN_RE = re.compile(r"^([a-z0-9_]+)(?:\((\d+)\))?$")


def builtin(name: str) -> Pair:
    """Construct one of the documented built-in pairs by name."""
    m = _BUILTIN_RE.match(name.strip())
    if not m:
        raise UnknownName(f"bad pair name {name!r}")
    base, arg = m.group(1), m.group(2)
    if base == "bost_connes" and arg is None:
        return _bost_connes()
    if base == "inversion" and arg is not None:
        return _inversion(int(arg))
    if base == "flip" and arg is None:
        return _flip()
    if base == "gl2q_plus_sl2z" and arg is None:
        return _gl2q_plus()
    if base == "sl2_z_inv_p" and arg is not None:
        return _sl2_z_inv_p(int(arg))
    if base == "free_non_hecke" and arg is None:
        return _free_non_hecke()
    raise UnknownName(f"unknown built-in pair {name!r}")


#: extra named pairs available to the CLI and tests (reduction examples etc.)
def get_pair(name: str) -> Pair:
    extras = {
        "d4_center": _d4_center,
        "z6_z3": lambda: _cyclic_pair(6, 3, "z6_z3"),
        "z4_z2": lambda: _cyclic_pair(4, 2, "z4_z2"),
    }
    base = name.strip()
    if base in extras:
        return extras[base]()
    return builtin(name)


# ---------------------------------------------------------------------------
# element literals


def parse_fraction(tok: str) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError(f"bad rational {tok!r}: {e}") from None


def parse_element(group, text: str):
    """Parse an element literal: "axb A B", "mat2 a b c d", "fin K",
    "word s" (lowercase letters; uppercase for inverses), "semi (v) eps"."""
    toks = text.split()
    if not toks:
        raise ParseError("empty element literal")
    tag = toks[0]
    if tag == "axb":
        if len(toks) != 3:
            raise ParseError(f"axb literal needs 2 rationals: {text!r}")
        el = (parse_fraction(toks[1]), parse_fraction(toks[2]))
    elif tag == "mat2":
        if len(toks) != 5:
            raise ParseError(f"mat2 literal needs 4 rationals: {text!r}")
        a, b, c, d = map(parse_fraction, toks[1:])
        el = ((a, b), (c, d))
    elif tag == "fin":
        if len(toks) != 2 or not toks[1].lstrip("-").isdigit():
            raise ParseError(f"fin literal needs an index: {text!r}")
        elems = group.elements()
        if elems is None:
            raise ParseError("fin literal needs a finite group")
        k = int(toks[1])
        if not 0 <= k < len(elems):
            raise ParseError(f"fin index {k} out of range 0..{len(elems) - 1}")
        el = elems[k]
    elif tag == "word":
        if len(toks) != 2:
            raise ParseError(f"word literal needs one token: {text!r}")
        letters = "abcdefgh"
        out = []
        for ch in toks[1]:
            low = ch.lower()
            if low not in letters:
                raise ParseError(f"unknown generator letter {ch!r}")
            i = letters.index(low) + 1
            out.append(i if ch.islower() else -i)
        el = word_reduce(out)
    elif tag == "semi":
        m = re.match(r"^semi\s+\(([\d,\s]*)\)\s+([+-]?1|[+-])$", text.strip())
        if not m:
            raise ParseError(f"bad semidirect literal: {text!r}")
        parts = [int(t) for t in m.group(1).split(",") if t.strip()]
        v = tuple(parts) if len(parts) != 1 else parts[0]
        eps = 1 if m.group(2) in ("1", "+1", "+") else -1
        el = (v, eps)
    else:
        raise ParseError(f"unknown element kind {tag!r}")
    group.check(el)
    return el


def element_literal(group, el) -> str:
    """Inverse of parse_element for display purposes."""
    kind = group.kind
    if kind == "axb":
        return f"axb {el[0]} {el[1]}"
    if kind == "mat2":
        (a, b), (c, d) = el
        return f"mat2 {a} {b} {c} {d}"
    if kind == "free":
        return f"word {group.element_str(el)}"
    if kind == "semidirect":
        n, e = el
        v = n if isinstance(n, tuple) else (n,)
        return f"semi ({','.join(map(str, v))}) {e}"
    return f"fin {group.index_of(el)}"


# ---------------------------------------------------------------------------
# config loader

_MEMBERSHIP_VOCAB = (
    "integer-entries",
    "det-one",
    "translation-integer",
    "word-in-generators-with-budget",
)


def _vocab_membership(rules, group, generators):
    checks = []
    for rule in rules:
        if rule == "integer-entries":
            checks.append(
                lambda x: all(
                    Fraction(v).denominator == 1 for row in x for v in row
                )
            )
        elif rule == "det-one":
            checks.append(lambda x: x[0][0] * x[1][1] - x[0][1] * x[1][0] == 1)
        elif rule == "translation-integer":
            checks.append(lambda x: x[0] == 1 and Fraction(x[1]).denominator == 1)
        elif rule == "word-in-generators-with-budget":
            closure = {group.identity()}
            frontier = [group.identity()]
            gens = list(generators) + [group.inv(s) for s in generators]
            while frontier and len(closure) < 4096:
                cur = frontier.pop()
                for s in gens:
                    y = group.mul(cur, s)
                    if y not in closure:
                        closure.add(y)
                        frontier.append(y)
            checks.append(lambda x, closure=closure: x in closure)
        else:
            raise ParseError(
                f"unknown membership rule {rule!r}; pick from {_MEMBERSHIP_VOCAB}"
            )
    return lambda x: all(c(x) for c in checks)


def _build_group(kind: str, section):
    if kind == "axb":
        return AxBGroup()
    if kind == "mat2":
        return Mat2Group()
    if kind == "free":
        return FreeGroup(int(section.get("rank", "2")))
    if kind == "finite":
        preset = section.get("preset", "cyclic")
        n = int(section.get("n", "1"))
        if preset == "cyclic":
            return cyclic_group(n)
        if preset == "dihedral":
            return dihedral_group(n)
        if preset == "symmetric":
            return symmetric_group(n)
        raise ParseError(f"unknown finite preset {preset!r}")
    if kind == "semidirect":
        normal_kind = section.get("normal", "cyclic")
        if normal_kind == "cyclic":
            n = int(section.get("n", "2"))
            normal = cyclic_group(n)
        elif normal_kind == "z2xz2":
            normal = direct_product_z2_z2()
        else:
            raise ParseError(f"unknown normal part {normal_kind!r}")
        action_name = section.get("action", "inversion")
        if action_name == "inversion":
            n = len(normal.elements())
            action = lambda eps, k: k if eps == 1 else normal.inv(k)  # noqa: E731
        elif action_name == "flip":
            action = lambda eps, v: v if eps == 1 else (v[1], v[0])  # noqa: E731
        else:
            raise ParseError(f"unknown action {action_name!r}")
        return SemidirectGroup(normal, action)
    raise ParseError(f"unknown group kind {kind!r}")


def _validation_samples(pair: Pair, count=1000):
    """Deterministic sample pairs for subgroup_check: products of subgroup
    generators (members by construction) paired with each other."""
    rng = random.Random(0)
    g = pair.group
    gens = list(pair.subgroup.generators)
    gens = gens + [g.inv(s) for s in gens]
    members = []
    for _ in range(count):
        x = g.identity()
        for _ in range(rng.randint(0, 6)):
            x = g.mul(x, rng.choice(gens))
        members.append(x)
    return list(zip(members, reversed(members)))


def load_pair(config_text: str) -> Pair:
    """Build a Pair from a config file; see the package README for the schema."""
    cp = configparser.ConfigParser()
    try:
        cp.read_string(config_text)
    except configparser.Error as e:
        line = getattr(e, "lineno", None)
        raise ParseError(str(e), line=line) from None
    for sec in ("group", "subgroup"):
        if sec not in cp:
            raise ParseError(f"missing [{sec}] section")
    gsec = cp["group"]
    kind = gsec.get("kind")
    if kind is None:
        raise ParseError("missing kind= in [group]")
    group = _build_group(kind, gsec)

    ssec = cp["subgroup"]
    gen_text = ssec.get("generators", "")
    if not gen_text.strip():
        raise ParseError("missing generators= in [subgroup]")
    generators = tuple(parse_element(group, t.strip()) for t in gen_text.split(";"))
    rules = [r.strip() for r in ssec.get("membership", "").split(",") if r.strip()]
    if not rules:
        raise ParseError("missing membership= in [subgroup]")
    membership = _vocab_membership(rules, group, generators)
    is_finite = (
        group.is_finite
        or ssec.get("finite", "false").strip().lower() == "true"
    )
    sub = Subgroup(
        parent=group,
        membership=membership,
        generators=generators,
        is_finite=is_finite,
    )

    meta = cp["meta"] if "meta" in cp else {}
    name = meta.get("name", "custom")
    canon_id = meta.get("canonicalizer", "none")
    if canon_id not in _CANONICALIZERS:
        raise ParseError(f"unknown canonicalizer {canon_id!r}")
    pair = Pair(
        group=group,
        subgroup=sub,
        name=name,
        canonicalizer=_CANONICALIZERS[canon_id],
    )

    report = subgroup_check(sub, _validation_samples(pair))
    if not report.ok:
        raise ValidationError(
            f"subgroup sanity check failed: {report.violations[:3]}"
        )
    return pair
