"""Shipped generator files for the concrete groups of the census.

File format (UTF-8 text, LF or CRLF)::

    degree <n>
    order <m>
    # optional comment lines, anywhere after the header
    <n whitespace-separated 1-based images>     one line per generator

Nothing in a file is trusted: every load rebuilds the stabilizer chain and
checks the order and, where the catalog says so, transitivity.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Sequence

from .group import PermutationGroup
from .perm import Permutation, format_images

DATA_ENV = "CAYLEY_CENSUS_DATA"


class GroupDataError(Exception):
    """Base class for catalog and generator-file failures."""


class UnknownGroupError(GroupDataError, KeyError):
    def __str__(self) -> str:  # KeyError quotes its argument otherwise
        return str(self.args[0])


class GeneratorParseError(GroupDataError, ValueError):
    def __init__(self, path: str, line: int, msg: str):
        super().__init__(f"{path}:{line}: {msg}")
        self.path = path
        self.line = line


class OrderMismatchError(GroupDataError):
    pass


class TransitivityMismatchError(GroupDataError):
    pass


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    degree: int
    order: int
    transitive: bool
    # shipped groups this one must lie inside (checked by validate_catalog)
    inside: tuple[str, ...] = ()


CATALOG: dict[str, CatalogEntry] = {e.name: e for e in [
    CatalogEntry("A11.deg11", 11, 19958400, True),
    CatalogEntry("A12.deg12", 12, 239500800, True, ("S12.deg12",)),
    CatalogEntry("M11.deg11", 11, 7920, True),
    CatalogEntry("M11.deg12", 12, 7920, True),
    CatalogEntry("M11.deg24", 24, 7920, False, ("M12.deg24", "M12.2.deg24")),
    CatalogEntry("M12.2.deg24", 24, 190080, True),
    CatalogEntry("M12.deg12", 12, 95040, True),
    CatalogEntry("M12.deg24", 24, 95040, False, ("M12.2.deg24",)),
    CatalogEntry("M24.deg24", 24, 244823040, True),
    CatalogEntry("S12.deg12", 12, 479001600, True),
]}


@dataclass
class GroupSpec:
    name: str
    degree: int
    generators: list[Permutation]
    expected_order: int
    transitive: bool | None
    group: PermutationGroup
    comments: list[str] = field(default_factory=list)


@dataclass
class GeneratorFile:
    degree: int
    order: int
    generators: list[Permutation]
    comments: list[str]


def data_dir() -> Path:
    env = os.environ.get(DATA_ENV)
    if env:
        return Path(env)
    return Path(__file__).resolve().parent / "data"


def parse_generator_text(text: str, path: str = "<string>") -> GeneratorFile:
    lines = text.replace("\r\n", "\n").replace("\r", "\n").split("\n")
    degree = order = None
    gens: list[Permutation] = []
    comments: list[str] = []
    for lineno, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            comments.append(line[1:].strip())
            continue
        tok = line.split()
        if degree is None:
            if len(tok) != 2 or tok[0] != "degree":
                raise GeneratorParseError(path, lineno, "expected 'degree <n>'")
            degree = _positive(tok[1], path, lineno)
            continue
        if order is None:
            if len(tok) != 2 or tok[0] != "order":
                raise GeneratorParseError(path, lineno, "expected 'order <m>'")
            order = _positive(tok[1], path, lineno)
            continue
        if len(tok) != degree:
            raise GeneratorParseError(path, lineno, f"expected {degree} images, found {len(tok)}")
        try:
            vals = [int(t) - 1 for t in tok]
        except ValueError:
            raise GeneratorParseError(path, lineno, "non-integer image") from None
        try:
            gens.append(Permutation(vals))
        except ValueError as exc:
            raise GeneratorParseError(path, lineno, str(exc)) from None
    if degree is None or order is None:
        raise GeneratorParseError(path, len(lines), "missing 'degree'/'order' header")
    if not gens:
        raise GeneratorParseError(path, len(lines), "no generators")
    return GeneratorFile(degree, order, gens, comments)


def _positive(tok: str, path: str, lineno: int) -> int:
    try:
        v = int(tok)
    except ValueError:
        raise GeneratorParseError(path, lineno, f"not an integer: {tok!r}") from None
    if v <= 0:
        raise GeneratorParseError(path, lineno, "must be positive")
    return v


def read_generator_file(path: str | os.PathLike) -> GeneratorFile:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise GeneratorParseError(str(p), 0, f"cannot read: {exc.strerror}") from None
    return parse_generator_text(text, str(p))


def format_generator_file(gens: Sequence[Permutation], order: int, comments: Iterable[str] = ()) -> str:
    out = [f"degree {gens[0].degree}", f"order {order}"]
    out += [f"# {c}" for c in comments]
    out += [format_images(g) for g in gens]
    return "\n".join(out) + "\n"


def write_generator_file(path: str | os.PathLike, gens: Sequence[Permutation], order: int,
                         comments: Iterable[str] = ()) -> None:
    Path(path).write_text(format_generator_file(gens, order, comments), encoding="utf-8")


def build_checked(name: str, gf: GeneratorFile, transitive: bool | None) -> GroupSpec:
    G = PermutationGroup(gf.generators, degree=gf.degree)
    if G.order() != gf.order:
        raise OrderMismatchError(f"{name}: generators give order {G.order()}, file says {gf.order}")
    if transitive is not None and G.is_transitive() != transitive:
        raise TransitivityMismatchError(
            f"{name}: expected {'transitive' if transitive else 'intransitive'} action")
    return GroupSpec(name, gf.degree, gf.generators, gf.order, transitive, G, gf.comments)


def load_group(name: str) -> GroupSpec:
    """Load and validate a catalog group (cached per data directory)."""
    return _load_cached(name, str(data_dir()))


@lru_cache(maxsize=None)
def _load_cached(name: str, directory: str) -> GroupSpec:
    entry = CATALOG.get(name)
    if entry is None:
        raise UnknownGroupError(f"unknown group {name!r}; known: {', '.join(sorted(CATALOG))}")
    gf = read_generator_file(Path(directory) / f"{name}.gens")
    if gf.degree != entry.degree:
        raise GeneratorParseError(name, 1, f"degree {gf.degree}, catalog says {entry.degree}")
    if gf.order != entry.order:
        raise OrderMismatchError(f"{name}: file order {gf.order}, catalog says {entry.order}")
    return build_checked(name, gf, entry.transitive)


def load_user_group(path: str | os.PathLike) -> GroupSpec:
    gf = read_generator_file(path)
    return build_checked(str(path), gf, None)


def catalog() -> list[tuple[str, int, int]]:
    return [(e.name, e.degree, e.order) for e in sorted(CATALOG.values(), key=lambda e: e.name)]


def validate_catalog() -> dict[str, int]:
    """Load everything and check the containments recorded in the catalog."""
    orders = {}
    for name, _, _ in catalog():
        spec = load_group(name)
        orders[name] = spec.group.order()
        for big in CATALOG[name].inside:
            over = load_group(big).group
            for g in spec.generators:
                if not over.contains(g):
                    raise GroupDataError(f"{name} generator not in {big}")
    return orders


def clear_cache() -> None:
    _load_cached.cache_clear()
