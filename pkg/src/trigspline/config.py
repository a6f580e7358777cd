"""``key = value`` run configuration for the ``solve`` command.

Example::

    # u'' + C/(1+x) u' - x/(1+x) u = ...
    const C = 10
    family = even
    r = 3
    n = 9
    a = 0
    b = 1
    u_a = 0
    u_b = .5
    p1 = C/(1+x)
    p2 = -x/(1+x)
    f = (C-2-x^2*(1+x))/(1+x)^3
    exact = x/(1+x)
"""

from dataclasses import dataclass, field
import os
from typing import Optional

from .basis import BasisSpec, Family
from .bvp import BvpProblem
from .expr import ExprError, bind, constants_used, evaluate, parse
from .kernels import DEFAULT_EPS_TAIL, DEFAULT_M_CAP

__all__ = ["ConfigError", "RunConfig", "parse_config", "default_eps_tail", "EPS_TAIL_ENV"]

EPS_TAIL_ENV = "TRIGSPLINE_EPS_TAIL"

REQUIRED = ("p1", "p2", "f", "a", "b", "u_a", "u_b", "n")
EXPRESSIONS = ("p1", "p2", "f", "exact")
NUMBERS = ("a", "b", "u_a", "u_b")
KEYS = set(REQUIRED) | {"family", "r", "exact", "eps_tail", "m_cap", "samples", "out"}


class ConfigError(ValueError):
    def __init__(self, message, line=None):
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")


def default_eps_tail(fallback=DEFAULT_EPS_TAIL):
    """Tail tolerance from the environment, else `fallback`."""
    raw = os.environ.get(EPS_TAIL_ENV)
    if raw is None or not raw.strip():
        return fallback
    try:
        value = float(raw)
    except ValueError:
        raise ConfigError(f"{EPS_TAIL_ENV}={raw!r} is not a number") from None
    if not value > 0:
        raise ConfigError(f"{EPS_TAIL_ENV} must be positive, got {raw!r}")
    return value


@dataclass(frozen=True)
class RunConfig:
    family: Family
    r: int
    n: int
    a: float
    b: float
    u_a: float
    u_b: float
    p1: str
    p2: str
    f: str
    exact: Optional[str] = None
    constants: dict = field(default_factory=dict)
    eps_tail: float = DEFAULT_EPS_TAIL
    m_cap: int = DEFAULT_M_CAP
    samples: int = 400
    out: Optional[str] = None

    def basis(self):
        return BasisSpec(self.family, self.n, self.r, self.eps_tail, self.m_cap)

    def problem(self):
        c = self.constants
        return BvpProblem(
            p1=bind(self.p1, c),
            p2=bind(self.p2, c),
            f=bind(self.f, c),
            a=self.a,
            b=self.b,
            u_a=self.u_a,
            u_b=self.u_b,
            exact=bind(self.exact, c) if self.exact else None,
        )


def _int(value, key, line):
    try:
        return int(value)
    except ValueError:
        raise ConfigError(f"{key} must be an integer, got {value!r}", line) from None


def parse_config(text):
    """Parse and validate a run configuration.

    Raises `ConfigError` (carrying the line number where one applies) for
    unknown or duplicate keys, missing required keys, malformed values and
    inconsistent settings.
    """
    raw = {}
    where = {}
    constants = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got {line!r}", lineno)
        key, value = (s.strip() for s in line.split("=", 1))
        if not value:
            raise ConfigError(f"empty value for {key!r}", lineno)
        if key.startswith("const ") or key.startswith("const\t"):
            name = key[6:].strip()
            if not name.isidentifier():
                raise ConfigError(f"invalid constant name {name!r}", lineno)
            try:
                constants[name] = evaluate(parse(value), 0.0, constants)
            except ExprError as exc:
                raise ConfigError(f"constant {name}: {exc}", lineno) from None
            continue
        if key not in KEYS:
            raise ConfigError(f"unknown key {key!r}", lineno)
        if key in raw:
            raise ConfigError(f"duplicate key {key!r}", lineno)
        raw[key] = value
        where[key] = lineno

    missing = [k for k in REQUIRED if k not in raw]
    if missing:
        raise ConfigError(f"missing required key(s): {', '.join(missing)}")

    values = {"constants": constants}
    for key in EXPRESSIONS:
        if key not in raw:
            continue
        try:
            tree = parse(raw[key])
        except ExprError as exc:
            raise ConfigError(f"{key}: {exc}", where[key]) from None
        unbound = constants_used(tree) - constants.keys() - {"pi"}
        if unbound:
            raise ConfigError(f"{key}: unbound constant(s) {', '.join(sorted(unbound))}", where[key])
        values[key] = raw[key]
    for key in NUMBERS:
        try:
            values[key] = evaluate(parse(raw[key]), 0.0, constants)
        except ExprError as exc:
            raise ConfigError(f"{key}: {exc}", where[key]) from None

    try:
        values["family"] = Family(raw.get("family", "even").lower())
    except ValueError:
        raise ConfigError(f"family must be even, odd0 or odd1, got {raw['family']!r}", where.get("family")) from None
    values["r"] = _int(raw.get("r", "3"), "r", where.get("r"))
    values["n"] = _int(raw["n"], "n", where["n"])
    values["m_cap"] = _int(raw.get("m_cap", str(DEFAULT_M_CAP)), "m_cap", where.get("m_cap"))
    values["samples"] = _int(raw.get("samples", "400"), "samples", where.get("samples"))
    if "eps_tail" in raw:
        try:
            values["eps_tail"] = float(raw["eps_tail"])
        except ValueError:
            raise ConfigError(f"eps_tail must be a number, got {raw['eps_tail']!r}", where["eps_tail"]) from None
    else:
        values["eps_tail"] = default_eps_tail()
    values["out"] = raw.get("out")

    cfg = RunConfig(**values)
    _validate(cfg, where)
    return cfg


def _validate(cfg, where):
    if not cfg.a < cfg.b:
        raise ConfigError(f"need a < b, got a={cfg.a}, b={cfg.b}", where.get("b"))
    if cfg.r < 3:
        raise ConfigError(f"collocation needs r >= 3, got {cfg.r}", where.get("r"))
    min_n = 4 if cfg.family is Family.EVEN else 1
    if cfg.n < min_n:
        raise ConfigError(f"{cfg.family.value} basis needs n >= {min_n}, got {cfg.n}", where.get("n"))
    if cfg.family is not Family.EVEN and (cfg.u_a != 0 or cfg.u_b != 0):
        raise ConfigError(
            f"family {cfg.family.value} needs zero boundary values, got u_a={cfg.u_a}, u_b={cfg.u_b}",
            where.get("u_a") if cfg.u_a != 0 else where.get("u_b"),
        )
    if not cfg.eps_tail > 0:
        raise ConfigError(f"eps_tail must be positive, got {cfg.eps_tail}", where.get("eps_tail"))
    if cfg.m_cap < 1:
        raise ConfigError(f"m_cap must be >= 1, got {cfg.m_cap}", where.get("m_cap"))
    if cfg.samples < 2:
        raise ConfigError(f"samples must be >= 2, got {cfg.samples}", where.get("samples"))
