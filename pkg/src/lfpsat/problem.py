"""Problem files: parsing and assembly into closure problems.

Line-oriented, ``#`` starts a comment. Directives::

    universe x y z                 powerset carrier (atom order = bit order)
    basis singleton | list         basis of a powerset carrier (default singleton)

    lattice explicit               explicit carrier, followed by
    elem <id>                      one line per element
    leq <id> <id>                  order pairs (closed reflexively-transitively)
    basis <id> <elem-id>           basis index and its image (default: join-irreducibles)

    rule <head> <- <atom>*         Horn rule; empty body is a fact
    map <name> <elem> -> <elem>    one line per element, the table must be total
    map <name> random              seeded monotone completion of a random function
    dense <elem> | @all | @basis   dense family members for the map
    present <j> <b>* => <b>*       explicit presentation entry Y(j) => R_j
    option seed <N>
    option max-universe <N>

Powerset elements are written ``{a,b}``; explicit elements by their id.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from pathlib import Path

from .closure import ClosureProblem
from .errors import LfpError, ParseError, GuardError
from .generator import (
    Bound,
    DenseFamily,
    Extensional,
    Generator,
    HornRule,
    MonotoneMap,
    bound_of,
    canonical_generator,
    dense_generator,
    rule_set,
    table_map,
    validate_monotone,
)
from .lattice import (
    Basis,
    BasisSubset,
    Element,
    ExplicitLattice,
    LatticeHandle,
    Presentation,
    explicit_basis,
    tautological_presentation,
)
from .powerset import (
    FiniteUniverse,
    PowersetLattice,
    list_basis,
    list_presentation,
    membership_presentation,
    singleton_basis,
)
from .samples import random_monotone_map

DEFAULT_MAX_UNIVERSE = 16

_TOKEN = re.compile(r"\{[^}]*\}|\S+")


@dataclass(frozen=True)
class Token:
    text: str
    line: int
    column: int


@dataclass
class ProblemFile:
    path: str = "<input>"
    universe: list[Token] | None = None
    explicit: Token | None = None
    elems: list[Token] = field(default_factory=list)
    leqs: list[tuple[Token, Token]] = field(default_factory=list)
    basis_pairs: list[tuple[Token, Token]] = field(default_factory=list)
    basis_choice: Token | None = None
    rules: list[tuple[Token, list[Token]]] = field(default_factory=list)
    map_name: Token | None = None
    map_entries: list[tuple[Token, Token]] = field(default_factory=list)
    map_random: bool = False
    dense: list[Token] = field(default_factory=list)
    present: list[tuple[Token, list[Token], list[Token]]] = field(default_factory=list)
    seed: int | None = None
    max_universe: int | None = None


def _tokens(line: str, lineno: int) -> list[Token]:
    return [Token(m.group(), lineno, m.start() + 1) for m in _TOKEN.finditer(line)]


def parse(text: str, path: str = "<input>") -> ProblemFile:
    pf = ProblemFile(path=path)

    def fail(msg: str, tok: Token) -> ParseError:
        return ParseError(msg, tok.line, tok.column, path)

    for lineno, raw in enumerate(text.splitlines(), start=1):
        toks = _tokens(raw.split("#", 1)[0], lineno)
        if not toks:
            continue
        head, args = toks[0], toks[1:]
        kw = head.text
        if kw == "universe":
            if pf.universe is not None:
                raise fail("duplicate universe declaration", head)
            pf.universe = args
        elif kw == "lattice":
            if len(args) != 1 or args[0].text != "explicit":
                raise fail("expected 'lattice explicit'", head)
            pf.explicit = head
        elif kw == "elem":
            if len(args) != 1:
                raise fail("expected 'elem <id>'", head)
            pf.elems.append(args[0])
        elif kw == "leq":
            if len(args) != 2:
                raise fail("expected 'leq <id> <id>'", head)
            pf.leqs.append((args[0], args[1]))
        elif kw == "basis":
            if len(args) == 1:
                if args[0].text not in ("singleton", "list"):
                    raise fail(f"unknown basis kind {args[0].text!r} (singleton or list)", args[0])
                pf.basis_choice = args[0]
            elif len(args) == 2:
                pf.basis_pairs.append((args[0], args[1]))
            else:
                raise fail("expected 'basis singleton|list' or 'basis <id> <elem-id>'", head)
        elif kw == "rule":
            if not args or len(args) < 2 or args[1].text != "<-":
                raise fail("expected 'rule <head> <- <atom>*'", head)
            pf.rules.append((args[0], args[2:]))
        elif kw == "map":
            if len(args) == 2 and args[1].text == "random":
                name = args[0]
                pf.map_random = True
            elif len(args) == 4 and args[2].text == "->":
                name = args[0]
                pf.map_entries.append((args[1], args[3]))
            else:
                raise fail("expected 'map <name> <elem> -> <elem>' or 'map <name> random'", head)
            if pf.map_name is not None and pf.map_name.text != name.text:
                raise fail(f"only one map per file, already have {pf.map_name.text!r}", name)
            pf.map_name = name
        elif kw == "dense":
            if len(args) != 1:
                raise fail("expected 'dense <elem>|@all|@basis'", head)
            pf.dense.append(args[0])
        elif kw == "present":
            texts = [t.text for t in args]
            if not args or "=>" not in texts[1:]:
                raise fail("expected 'present <j> <b>* => <b>*'", head)
            k = texts.index("=>", 1)
            pf.present.append((args[0], args[1:k], args[k + 1 :]))
        elif kw == "option":
            if len(args) != 2 or args[0].text not in ("seed", "max-universe"):
                raise fail("expected 'option seed <N>' or 'option max-universe <N>'", head)
            try:
                value = int(args[1].text)
            except ValueError:
                raise fail(f"expected an integer, got {args[1].text!r}", args[1]) from None
            if args[0].text == "seed":
                pf.seed = value
            else:
                pf.max_universe = value
        else:
            raise fail(f"unknown directive {kw!r}", head)
    if pf.universe is None and pf.explicit is None:
        raise ParseError("no carrier: declare 'universe ...' or 'lattice explicit'", 1, 1, path)
    if pf.universe is not None and pf.explicit is not None:
        raise fail("a file declares either a universe or an explicit lattice, not both", pf.explicit)
    if pf.rules and pf.map_name is not None:
        raise fail("a file gives either rules or a map, not both", pf.map_name)
    if pf.dense and pf.map_name is None:
        raise fail("a dense family needs a map", pf.dense[0])
    if pf.map_random and pf.map_entries:
        raise fail("a random map takes no table entries", pf.map_name)
    return pf


@dataclass
class Instance:
    """A parsed problem with resolved lattice, basis and generator data.

    Law checks (monotonicity, density, bound) are not run here; see
    :meth:`closure_problem` and :mod:`lfpsat.cli`.
    """

    source: ProblemFile
    lattice: LatticeHandle
    basis: Basis
    presentation: Presentation
    rules: tuple[HornRule, ...] = ()
    f: MonotoneMap | None = None
    family: DenseFamily | None = None
    seed: int | None = None
    random_map: bool = False

    @property
    def kind(self) -> str:
        if self.f is None:
            return "rules"
        return "dense" if self.family is not None else "canonical"

    def validated_map(self) -> MonotoneMap:
        assert self.f is not None
        return validate_monotone(self.f, self.lattice, seed=self.seed or 0)

    def generator(self) -> tuple[Generator, Bound | None]:
        """Build the generator; raises MonotonicityError or DensityError on bad maps."""
        if self.f is None:
            gen = rule_set(self.rules, self.basis, self.lattice) if self.rules else Extensional(())
            return gen, bound_of(gen, self.basis, self.lattice)
        f = self.validated_map()
        if self.family is None:
            return canonical_generator(f), None
        return dense_generator(f, self.family, self.basis, self.lattice)

    def closure_problem(self, validate: bool = True) -> ClosureProblem:
        gen, bound = self.generator()
        return ClosureProblem.build(self.lattice, self.basis, self.presentation, gen, bound, validate=validate)


def _resolve_powerset(pf: ProblemFile, basis_kind: str | None, max_universe: int):
    assert pf.universe is not None
    atoms = [t.text for t in pf.universe]
    seen: dict[str, Token] = {}
    for t in pf.universe:
        if t.text in seen:
            raise ParseError(f"duplicate atom {t.text!r}", t.line, t.column, pf.path)
        seen[t.text] = t
    if len(atoms) > max_universe:
        raise GuardError(f"universe has {len(atoms)} atoms, limit is {max_universe} (see --max-universe)")
    u = FiniteUniverse.of(atoms)
    lat = PowersetLattice(u)
    kind = basis_kind or (pf.basis_choice.text if pf.basis_choice else "singleton")
    if kind == "singleton":
        basis = singleton_basis(u, lat)
        pres = membership_presentation(u)
    else:
        basis = list_basis(u, lattice=lat)
        pres = list_presentation(basis, lat)
    return lat, basis, pres


def _resolve_explicit(pf: ProblemFile):
    try:
        lat = ExplicitLattice.from_relation([t.text for t in pf.elems], [(a.text, b.text) for a, b in pf.leqs])
    except LfpError as exc:
        assert pf.explicit is not None
        raise ParseError(f"invalid explicit lattice: {exc}", pf.explicit.line, pf.explicit.column, pf.path) from None
    if pf.basis_pairs:
        for lbl, img in pf.basis_pairs:
            try:
                lat.check(img.text)
            except LfpError:
                raise ParseError(f"basis image {img.text!r} is not an element", img.line, img.column, pf.path) from None
        try:
            basis = Basis.over(lat, [lb.text for lb, _ in pf.basis_pairs], [im.text for _, im in pf.basis_pairs])
        except LfpError as exc:
            lb = pf.basis_pairs[0][0]
            raise ParseError(str(exc), lb.line, lb.column, pf.path) from None
    else:
        basis = explicit_basis(lat)
    pres = tautological_presentation(basis, lat)
    return lat, basis, pres


def _basis_index(tok: Token, basis: Basis, lattice: LatticeHandle, path: str) -> int:
    if tok.text in basis.index:
        return basis.index[tok.text]
    wrapped = f"[{tok.text}]"
    if isinstance(lattice, PowersetLattice) and wrapped in basis.index:
        return basis.index[wrapped]
    raise ParseError(f"unknown basis index {tok.text!r}", tok.line, tok.column, path)


def _element(tok: Token, lattice: LatticeHandle, path: str) -> Element:
    try:
        return lattice.parse(tok.text)
    except LfpError as exc:
        raise ParseError(str(exc), tok.line, tok.column, path) from None


def build(
    pf: ProblemFile,
    basis_kind: str | None = None,
    seed: int | None = None,
    max_universe: int | None = None,
) -> Instance:
    """Resolve identifiers of a parsed file. Command-line overrides win over file options."""
    seed = seed if seed is not None else pf.seed
    limit = max_universe if max_universe is not None else (pf.max_universe or DEFAULT_MAX_UNIVERSE)
    if pf.universe is not None:
        lat, basis, pres = _resolve_powerset(pf, basis_kind, limit)
    else:
        if basis_kind is not None and basis_kind != "singleton":
            raise ParseError("--basis list applies to powerset universes only", 1, 1, pf.path)
        lat, basis, pres = _resolve_explicit(pf)

    if pf.present:
        j_labels, ys, pairs = [], [], set()
        for j, (jt, ytoks, rtoks) in enumerate(pf.present):
            j_labels.append(jt.text)
            ys.append(BasisSubset.of(len(basis), (_basis_index(t, basis, lat, pf.path) for t in ytoks)))
            pairs |= {(_basis_index(t, basis, lat, pf.path), j) for t in rtoks}
        pres = Presentation(tuple(j_labels), tuple(ys), frozenset(pairs))

    rules = tuple(
        HornRule(
            _basis_index(head, basis, lat, pf.path),
            BasisSubset.of(len(basis), (_basis_index(t, basis, lat, pf.path) for t in body)),
        )
        for head, body in pf.rules
    )

    f = None
    if pf.map_name is not None:
        name = pf.map_name.text
        if pf.map_random:
            f = random_monotone_map(lat, random.Random(seed or 0), name=name)
        else:
            table: dict[Element, Element] = {}
            for src, dst in pf.map_entries:
                x = _element(src, lat, pf.path)
                if x in table:
                    raise ParseError(f"map {name} defined twice at {src.text}", src.line, src.column, pf.path)
                table[x] = _element(dst, lat, pf.path)
            try:
                f = table_map(table, lat, name)
            except LfpError as exc:
                raise ParseError(str(exc), pf.map_name.line, pf.map_name.column, pf.path) from None

    family = None
    if pf.dense:
        members: list[Element] = []
        for tok in pf.dense:
            if tok.text == "@all":
                members.extend(lat.elements())
            elif tok.text == "@basis":
                members.extend(basis.images)
            else:
                members.append(_element(tok, lat, pf.path))
        family = DenseFamily.of(dict.fromkeys(members))

    return Instance(pf, lat, basis, pres, rules, f, family, seed, pf.map_random)


def load(path: str | Path, **overrides) -> Instance:
    p = Path(path)
    return build(parse(p.read_text(), str(p)), **overrides)
