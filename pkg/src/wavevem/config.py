"""Study configuration: flat key-value text files with sections.

Every run resolves its configuration (defaults materialized), embeds a hash
of the resolved text in the result CSV and writes the resolved text next to
the results, so studies are reproducible from their outputs alone.
"""
from __future__ import annotations

import configparser
import hashlib
import io
import math
from dataclasses import dataclass, field

_DEFAULTS: dict[str, dict[str, str]] = {
    "problem": {
        "k": "7.0",
        "n1": "2.0",
        "n2": "1.0",
        "theta_inc_deg": "75.0",
    },
    "mesh": {
        "family": "cartesian",
        "refinements": "4 8 16 32",
        "sigma": "0.3333333333333333",
    },
    "degrees": {
        "policy": "subdomain",
        "q1": "4",
        "q2": "4",
        "qt2": "0",
        "q_cut": "",
        "mu": "2.0",
        "q2_list": "",
        "qt2_list": "",
        "q1_rule": "equal",
    },
    "numerics": {
        "sigma_filter": "1e-13",
        "sigma_rel": "0.0",
        "cut_policy": "average",
        "condition_limit": "1e14",
        "quad_order": "20",
        "direction_offset": "0.0",
    },
    "output": {
        "csv": "out/study.csv",
        "raster": "",
        "raster_n": "101",
    },
}

_VALID_FAMILIES = ("cartesian", "graded_iso", "graded_aniso", "file")
_VALID_POLICIES = ("subdomain", "p_sweep", "hp_uniform", "hp_graded")
_VALID_Q1_RULES = ("equal", "double", "double_total", "fixed")
_VALID_CUT = ("average", "max")


class ConfigError(ValueError):
    """Raised for malformed or inconsistent study configurations."""


@dataclass(frozen=True)
class StudyConfig:
    """Fully resolved study parameters."""

    k: float
    n1: float
    n2: float
    theta_inc_deg: float
    family: str
    refinements: tuple = ()
    sigma: float = 1.0 / 3.0
    policy: str = "subdomain"
    q1: int = 4
    q2: int = 4
    qt2: int = 0
    q_cut: int | None = None
    mu: float = 2.0
    q2_list: tuple[int, ...] = ()
    qt2_list: tuple[int, ...] = ()
    q1_rule: str = "equal"
    sigma_filter: float = 1e-13
    sigma_rel: float = 0.0
    cut_policy: str = "average"
    condition_limit: float = 1e14
    quad_order: int = 20
    direction_offset: float = 0.0
    csv: str = "out/study.csv"
    raster: str = ""
    raster_n: int = 101
    resolved_text: str = field(default="", compare=False)

    @property
    def theta_inc(self) -> float:
        return math.radians(self.theta_inc_deg)

    @property
    def config_hash(self) -> str:
        return hashlib.sha256(self.resolved_text.encode()).hexdigest()[:16]


def _resolve(parser: configparser.ConfigParser) -> str:
    out = io.StringIO()
    for section, defaults in _DEFAULTS.items():
        out.write(f"[{section}]\n")
        for key, default in defaults.items():
            value = default
            if parser.has_option(section, key):
                value = parser.get(section, key).strip()
            out.write(f"{key} = {value}\n")
        out.write("\n")
    return out.getvalue()


def parse_config(source) -> StudyConfig:
    """Parse a config file path, file object, or literal text."""
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    if hasattr(source, "read"):
        parser.read_file(source)
    else:
        text = str(source)
        if "\n" in text or "=" in text and "[" in text:
            parser.read_string(text)
        else:
            with open(text) as fh:
                parser.read_file(fh)
    for section in parser.sections():
        if section not in _DEFAULTS:
            raise ConfigError(f"unknown config section [{section}]")
        for key in parser.options(section):
            if key not in _DEFAULTS[section]:
                raise ConfigError(f"unknown key {key!r} in section [{section}]")
    resolved_text = _resolve(parser)
    res = configparser.ConfigParser()
    res.read_string(resolved_text)

    family = res.get("mesh", "family")
    if family not in _VALID_FAMILIES:
        raise ConfigError(f"mesh family must be one of {_VALID_FAMILIES}")
    refts = res.get("mesh", "refinements").split()
    refinements: tuple = tuple(refts) if family == "file" else tuple(int(r) for r in refts)
    if not refinements:
        raise ConfigError("mesh refinements list is empty")

    policy = res.get("degrees", "policy")
    if policy not in _VALID_POLICIES:
        raise ConfigError(f"degree policy must be one of {_VALID_POLICIES}")
    q1_rule = res.get("degrees", "q1_rule")
    if q1_rule not in _VALID_Q1_RULES:
        raise ConfigError(f"q1_rule must be one of {_VALID_Q1_RULES}")
    cut_policy = res.get("numerics", "cut_policy")
    if cut_policy not in _VALID_CUT:
        raise ConfigError(f"cut_policy must be one of {_VALID_CUT}")
    mu = res.getfloat("degrees", "mu")
    if policy in ("hp_uniform", "hp_graded") and mu <= 0:
        raise ConfigError("mu must be positive for hp degree policies")
    if policy == "hp_graded" and family == "graded_aniso":
        raise ConfigError(
            "graded degrees are not supported on anisotropic meshes (the "
            "tangential direction needs the uniform distribution)"
        )
    q_cut_raw = res.get("degrees", "q_cut").strip()
    cond_raw = res.get("numerics", "condition_limit").strip().lower()
    condition_limit = math.inf if cond_raw in ("inf", "none") else float(cond_raw)

    q2_list = tuple(int(v) for v in res.get("degrees", "q2_list").split())
    qt2_list = tuple(int(v) for v in res.get("degrees", "qt2_list").split())
    if policy == "p_sweep":
        if not q2_list:
            raise ConfigError("p_sweep needs a q2_list")
        if qt2_list and len(qt2_list) not in (1, len(q2_list)):
            raise ConfigError("qt2_list must have length 1 or match q2_list")

    return StudyConfig(
        k=res.getfloat("problem", "k"),
        n1=res.getfloat("problem", "n1"),
        n2=res.getfloat("problem", "n2"),
        theta_inc_deg=res.getfloat("problem", "theta_inc_deg"),
        family=family,
        refinements=refinements,
        sigma=res.getfloat("mesh", "sigma"),
        policy=policy,
        q1=res.getint("degrees", "q1"),
        q2=res.getint("degrees", "q2"),
        qt2=res.getint("degrees", "qt2"),
        q_cut=int(q_cut_raw) if q_cut_raw else None,
        mu=mu,
        q2_list=q2_list,
        qt2_list=qt2_list,
        q1_rule=q1_rule,
        sigma_filter=res.getfloat("numerics", "sigma_filter"),
        sigma_rel=res.getfloat("numerics", "sigma_rel"),
        cut_policy=cut_policy,
        condition_limit=condition_limit,
        quad_order=res.getint("numerics", "quad_order"),
        direction_offset=res.getfloat("numerics", "direction_offset"),
        csv=res.get("output", "csv"),
        raster=res.get("output", "raster"),
        raster_n=res.getint("output", "raster_n"),
        resolved_text=resolved_text,
    )
