"""Line-oriented ``.qnl`` netlists.

Grammar, one record per line::

    # comment
    [kind] key=value key=value ...

``kind`` is one of site, coupling, modulation, ladder, pump, meta. Keys are
identifiers ``[A-Za-z_][A-Za-z0-9_]*``; values are decimal numbers (optional
sign, fraction, exponent) or identifiers. Parsing stops at the first syntax
error; :func:`validate` collects every semantic error.

Record keys (SI units, angles in radians, frequencies in rad/s):

* ``[site] name=<id>`` plus either ``omega=`` or ``EJ=`` with one of ``C=`` / ``EC=``
* ``[coupling] from=<id> to=<id>`` plus either ``J=`` (optional ``phase=``) or ``LJ=`` / ``CJ=``
* ``[modulation] site=<id> omega_M=`` plus ``depth=`` or ``eJ=``; optional ``phase=``
* ``[pump] freq=`` with optional ``tol=``, ``phase=``, ``g0=``
* ``[ladder] N= td= tv= phi= boundary=open|periodic``
* ``[meta] version=1``
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field

import numpy as np

from . import circuitqed as cq
from .errors import DomainError
from .floquet import DriveSpec
from .lattice import build_creutz
from .model import Hop, LatticeModel

KINDS = ("site", "coupling", "modulation", "ladder", "pump", "meta")

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z", re.ASCII)
_NUMBER = re.compile(r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?\Z", re.ASCII)
_NUMBER_START = re.compile(r"[+\-.0-9]", re.ASCII)
_TOKEN = re.compile(r"[^ \t]+")


class ParseError(ValueError):
    """Syntax error with a 1-based line and column into the source."""

    def __init__(self, line, column, message, text=""):
        self.line = line
        self.column = column
        self.message = message
        self.text = text
        super().__init__(f"line {line}, column {column}: {message}" + (f" ({text!r})" if text else ""))


@dataclass(frozen=True)
class Record:
    kind: str
    fields: dict
    line: int = field(default=0, compare=False)
    columns: dict = field(default_factory=dict, compare=False)


@dataclass(frozen=True)
class Document:
    records: tuple[Record, ...] = ()

    def __len__(self):
        return len(self.records)

    def of_kind(self, kind):
        return [r for r in self.records if r.kind == kind]


def _parse_value(token, line, column):
    if _IDENT.match(token):
        return token
    if _NUMBER_START.match(token):
        if not _NUMBER.match(token):
            raise ParseError(line, column, "malformed number", token)
        value = float(token)
        if not math.isfinite(value):
            raise ParseError(line, column, "number out of binary64 range", token)
        return value
    raise ParseError(line, column, "value must be a number or identifier", token)


def _parse_line(text, lineno):
    stripped = text.lstrip(" \t")
    offset = len(text) - len(stripped)
    if not stripped.startswith("["):
        raise ParseError(lineno, offset + 1, "expected '[kind]'", _TOKEN.match(stripped).group())
    close = stripped.find("]")
    if close < 0:
        raise ParseError(lineno, offset + 1, "unterminated '[kind]'", stripped)
    kind = stripped[1:close]
    if kind not in KINDS:
        raise ParseError(
            lineno, offset + 2, f"unknown record kind {kind!r}; expected one of {', '.join(KINDS)}", kind
        )
    rest_start = offset + close + 1
    rest = text[rest_start:]
    if rest and rest[0] not in " \t":
        raise ParseError(lineno, rest_start + 1, "expected whitespace after ']'", _TOKEN.match(rest).group())

    fields, columns = {}, {}
    for m in _TOKEN.finditer(rest):
        token = m.group()
        col = rest_start + m.start() + 1
        key, eq, value = token.partition("=")
        if not eq:
            raise ParseError(lineno, col, "stray token; expected key=value", token)
        if not _IDENT.match(key):
            raise ParseError(lineno, col, "invalid key", key or token)
        if key in fields:
            raise ParseError(lineno, col, f"duplicate key {key!r}", key)
        if not value:
            raise ParseError(lineno, col, "missing value", token)
        fields[key] = _parse_value(value, lineno, col + len(key) + 1)
        columns[key] = col
    return Record(kind, fields, lineno, columns)


def parse(text) -> Document:
    """Parse netlist text (``str`` or UTF-8 ``bytes``) into a Document.

    Raises ``ParseError`` on the first syntax error.
    """
    if isinstance(text, (bytes, bytearray)):
        try:
            text = bytes(text).decode("utf-8")
        except UnicodeDecodeError as exc:
            before = bytes(text[: exc.start])
            line = before.count(b"\n") + 1
            col = exc.start - (before.rfind(b"\n") + 1) + 1
            raise ParseError(line, col, "input is not valid UTF-8") from None
    records = []
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw[:-1] if raw.endswith("\r") else raw
        stripped = line.strip(" \t")
        if not stripped or stripped.startswith("#"):
            continue
        records.append(_parse_line(line, lineno))
    return Document(tuple(records))


def _format_value(value):
    return value if isinstance(value, str) else repr(float(value))


def dump(doc: Document) -> str:
    """Canonical text: one record per line, single spaces, shortest round-trip floats."""
    lines = []
    for r in doc.records:
        parts = [f"[{r.kind}]"] + [f"{k}={_format_value(v)}" for k, v in r.fields.items()]
        lines.append(" ".join(parts))
    return "\n".join(lines) + ("\n" if lines else "")


# validation

@dataclass(frozen=True)
class Issue:
    line: int
    column: int
    message: str

    def __str__(self):
        return f"line {self.line}, column {self.column}: {self.message}"


class NetlistValidationError(DomainError):
    def __init__(self, issues):
        self.issues = list(issues)
        super().__init__("; ".join(str(i) for i in self.issues))


@dataclass(frozen=True)
class LatticeSpec:
    N: int
    td: float
    tv: float
    phi: float
    boundary: str = "open"

    def build(self) -> LatticeModel:
        return build_creutz(self.N, self.td, self.tv, self.phi, self.boundary)


@dataclass(frozen=True)
class SiteEntry:
    name: str
    omega: float | None = None
    transmon: cq.TransmonSpec | None = None


@dataclass(frozen=True)
class CouplingEntry:
    source: str
    target: str
    J: float | None = None
    phase: float = 0.0
    L_J: float = math.inf
    C_J: float = 0.0

    @property
    def physical(self):
        return self.J is None


@dataclass(frozen=True)
class ModulationEntry:
    site: str
    omega_M: float
    phase: float = 0.0
    depth: float | None = None
    e_J: float | None = None


@dataclass(frozen=True)
class PumpEntry:
    freq: float
    tol: float | None = None
    phase: float = 0.0
    g0: float | None = None


@dataclass(frozen=True)
class CircuitSpec:
    sites: tuple[SiteEntry, ...]
    couplings: tuple[CouplingEntry, ...] = ()
    modulations: tuple[ModulationEntry, ...] = ()
    pumps: tuple[PumpEntry, ...] = ()

    def index(self, name):
        return [s.name for s in self.sites].index(name)

    def coupled_spec(self, coupling: CouplingEntry) -> cq.CoupledCircuitSpec:
        left = self.sites[self.index(coupling.source)].transmon
        right = self.sites[self.index(coupling.target)].transmon
        return cq.CoupledCircuitSpec(left, right, coupling.L_J, coupling.C_J)

    def _physical_coupling_of(self, name):
        for c in self.couplings:
            if c.physical and name in (c.source, c.target):
                return c
        return None

    def site_frequencies(self):
        """Static frequency of every site (rad/s), dressed by its physical coupler if any."""
        out = []
        for s in self.sites:
            if s.omega is not None:
                out.append(s.omega)
                continue
            c = self._physical_coupling_of(s.name)
            if c is None:
                out.append(cq.transmon_params(s.transmon).omega0)
            else:
                p = cq.coupled_params(self.coupled_spec(c))
                out.append(p.omega0_left if s.name == c.source else p.omega0_right)
        return np.array(out)

    def lattice_model(self) -> LatticeModel:
        hops = []
        for c in self.couplings:
            if c.physical:
                J = cq.coupled_params(self.coupled_spec(c)).hopping_J
                amp = -J
            else:
                amp = -c.J * np.exp(1j * c.phase)
            hops.append(Hop(self.index(c.target), self.index(c.source), complex(amp)))
        labels = tuple(s.name for s in self.sites)
        return LatticeModel(self.site_frequencies(), tuple(hops), labels)

    def drive(self) -> DriveSpec | None:
        if not self.modulations:
            return None
        rates = {m.omega_M for m in self.modulations}
        if len(rates) != 1:
            raise DomainError("all modulations must share one omega_M")
        omega_M = rates.pop()
        depths = [0.0] * len(self.sites)
        phases = [0.0] * len(self.sites)
        for m in self.modulations:
            k = self.index(m.site)
            phases[k] = m.phase
            if m.depth is not None:
                depths[k] = m.depth
                continue
            c = self._physical_coupling_of(m.site)
            site = self.sites[k]
            mod = cq.ModulationSpec(m.e_J, omega_M, m.phase)
            if c is None:
                spec = cq.CoupledCircuitSpec(site.transmon, site.transmon)
                depths[k] = cq.modulation_depth(spec, mod, "left")
            else:
                side = "left" if m.site == c.source else "right"
                depths[k] = cq.modulation_depth(self.coupled_spec(c), mod, side)
        return DriveSpec(tuple(depths), omega_M, tuple(phases))

    def pump_terms(self):
        freqs = self.site_frequencies()
        return [
            cq.pump_term_select(freqs, p.freq, p.tol, p.phase) for p in self.pumps
        ]


_ALLOWED = {
    "site": {"name", "omega", "EJ", "C", "EC"},
    "coupling": {"from", "to", "J", "phase", "LJ", "CJ"},
    "modulation": {"site", "omega_M", "phase", "depth", "eJ"},
    "pump": {"freq", "tol", "phase", "g0"},
    "ladder": {"N", "td", "tv", "phi", "boundary"},
    "meta": {"version"},
}


class _Checker:
    def __init__(self):
        self.issues = []

    def error(self, record, key, message):
        col = record.columns.get(key, 1) if key else 1
        self.issues.append(Issue(record.line, col, message))

    def take(self, record, key, kind, required=True, default=None, check=None, what=""):
        if key not in record.fields:
            if required:
                self.error(record, None, f"[{record.kind}] missing required key {key!r}")
            return default
        value = record.fields[key]
        if kind == "number" and not isinstance(value, float):
            self.error(record, key, f"{key} must be a number, got {value!r}")
            return default
        if kind == "ident" and not isinstance(value, str):
            self.error(record, key, f"{key} must be an identifier, got {value!r}")
            return default
        if check is not None and not check(value):
            self.error(record, key, f"{key}={_format_value(value)} violates: {what}")
            return default
        return value


_pos = lambda v: v > 0
_nonneg = lambda v: v >= 0


def validate(doc: Document):
    """Cross-check a parsed document and bind it to model types.

    Returns a :class:`LatticeSpec` for ``[ladder]`` documents, otherwise a
    :class:`CircuitSpec`. Raises :class:`NetlistValidationError` listing every
    problem found.
    """
    ck = _Checker()
    for r in doc.records:
        for key in r.fields:
            if key not in _ALLOWED[r.kind]:
                ck.error(r, key, f"unknown key {key!r} for [{r.kind}]")
    for r in doc.of_kind("meta"):
        ck.take(r, "version", "number", check=lambda v: v == 1, what="only version=1 is defined")

    ladders = doc.of_kind("ladder")
    others = [r for r in doc.records if r.kind not in ("ladder", "meta")]
    if ladders:
        if others:
            first = others[0]
            ck.error(first, None, f"mixed document: [{first.kind}] record alongside [ladder]")
        for extra in ladders[1:]:
            ck.error(extra, None, "only one [ladder] record is allowed")
        r = ladders[0]
        N = ck.take(r, "N", "number", check=lambda v: v == int(v) and v >= 2, what="integer N >= 2")
        td = ck.take(r, "td", "number")
        tv = ck.take(r, "tv", "number")
        phi = ck.take(r, "phi", "number")
        boundary = ck.take(
            r, "boundary", "ident", required=False, default="open",
            check=lambda v: v in ("open", "periodic"), what="open or periodic",
        )
        if ck.issues:
            raise NetlistValidationError(ck.issues)
        return LatticeSpec(int(N), td, tv, phi, boundary)

    sites, names = [], set()
    for r in doc.of_kind("site"):
        name = ck.take(r, "name", "ident")
        if name is not None and name in names:
            ck.error(r, "name", f"site {name!r} defined twice")
        names.add(name)
        omega = ck.take(r, "omega", "number", required=False)
        physical = {"EJ", "C", "EC"} & set(r.fields)
        transmon = None
        if omega is not None and physical:
            ck.error(r, None, "give either omega or physical values (EJ with C or EC), not both")
        elif omega is None:
            EJ = ck.take(r, "EJ", "number", check=_pos, what="EJ > 0")
            C = ck.take(r, "C", "number", required=False, check=_pos, what="C > 0")
            EC = ck.take(r, "EC", "number", required=False, check=_pos, what="EC > 0")
            if ("C" in r.fields) == ("EC" in r.fields):
                ck.error(r, None, "give exactly one of C or EC")
            elif EJ is not None and (C is not None or EC is not None):
                transmon = cq.TransmonSpec(EJ, capacitance=C, charging_energy=EC)
        sites.append(SiteEntry(name, omega, transmon))
    known = {s.name for s in sites}
    physical_sites = {s.name for s in sites if s.transmon is not None}

    def ref(r, key):
        name = ck.take(r, key, "ident")
        if name is not None and name not in known:
            ck.error(r, key, f"dangling reference: no site named {name!r}")
            return None
        return name

    couplings = []
    for r in doc.of_kind("coupling"):
        src, dst = ref(r, "from"), ref(r, "to")
        if src is not None and src == dst:
            ck.error(r, "to", "a coupling needs two distinct sites")
        has_J = "J" in r.fields
        has_phys = bool({"LJ", "CJ"} & set(r.fields))
        if has_J == has_phys:
            ck.error(r, None, "give either J (with optional phase) or LJ/CJ")
            continue
        if has_J:
            J = ck.take(r, "J", "number")
            phase = ck.take(r, "phase", "number", required=False, default=0.0)
            couplings.append(CouplingEntry(src, dst, J=J, phase=phase))
            continue
        LJ = ck.take(r, "LJ", "number", required=False, default=math.inf, check=_pos, what="LJ > 0")
        CJ = ck.take(r, "CJ", "number", required=False, default=0.0, check=_nonneg, what="CJ >= 0")
        if "LJ" in r.fields and CJ:
            ck.error(r, None, "mixed LJ and CJ coupling is not supported")
        for key, name in (("from", src), ("to", dst)):
            if name is not None and name not in physical_sites:
                ck.error(r, key, f"LJ/CJ coupling needs physical site values on {name!r}")
        couplings.append(CouplingEntry(src, dst, L_J=LJ, C_J=CJ))

    modulations = []
    for r in doc.of_kind("modulation"):
        site = ref(r, "site")
        omega_M = ck.take(r, "omega_M", "number", check=_pos, what="omega_M > 0")
        phase = ck.take(r, "phase", "number", required=False, default=0.0)
        if ("depth" in r.fields) == ("eJ" in r.fields):
            ck.error(r, None, "give exactly one of depth or eJ")
            continue
        depth = ck.take(r, "depth", "number", required=False, check=_nonneg, what="depth >= 0")
        eJ = ck.take(r, "eJ", "number", required=False, check=_nonneg, what="eJ >= 0")
        if eJ is not None and site is not None and site not in physical_sites:
            ck.error(r, "eJ", f"eJ modulation needs physical site values on {site!r}")
        modulations.append(ModulationEntry(site, omega_M, phase, depth, eJ))

    pumps = []
    for r in doc.of_kind("pump"):
        freq = ck.take(r, "freq", "number", check=_pos, what="freq > 0")
        tol = ck.take(r, "tol", "number", required=False, check=_pos, what="tol > 0")
        phase = ck.take(r, "phase", "number", required=False, default=0.0)
        g0 = ck.take(r, "g0", "number", required=False)
        pumps.append(PumpEntry(freq, tol, phase, g0))

    if not sites and not ck.issues:
        ck.issues.append(Issue(1, 1, "document defines no sites and no ladder"))
    if ck.issues:
        raise NetlistValidationError(ck.issues)
    return CircuitSpec(tuple(sites), tuple(couplings), tuple(modulations), tuple(pumps))


def load(path):
    with open(path, "rb") as fh:
        return validate(parse(fh.read()))
