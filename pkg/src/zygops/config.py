"""Run configuration: TOML file plus dotted-key overrides.

The config file has nested blocks: [operator] (u, phi, n, optional params),
[spaces] (alpha/beta or nu/omega for weighted-type runs), [grid] (probe
sizes), [sweep], [verify], [output].  `u` and `phi` are expression strings
or inline tables naming a catalog family, e.g.
{ catalog = "f", a = [0.5, 0.3], alpha = 1.5 }.

Overrides arrive as `--set section.key=value` with TOML-syntax values;
unparseable values fall back to plain strings so `--set operator.phi=z/2`
works unquoted.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .characterize import AnalysisConfig
from .errors import ConfigError, ParseError, ZygopsError
from .functions import AnalyticMap, ExpressionMap
from .operators import OperatorSpec, SpacePair
from .spaces import DiskGrid, Weight
from .testfns import make_family

GRID_LIMITS = {"kmax": 20, "angular": 4096, "monomials": 2000}


def _as_complex(value, where: str) -> complex:
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, list) and len(value) == 2 and all(
            isinstance(x, (int, float)) for x in value):
        return complex(value[0], value[1])
    raise ConfigError(f"{where}: expected a number or [re, im] pair, got {value!r}")


def _parse_weight(text, where: str) -> Weight:
    if not isinstance(text, str):
        raise ConfigError(f"{where}: expected a weight string like 'alpha:1.5' or 'log'")
    if text == "log":
        return Weight.logarithmic()
    if text.startswith("alpha:"):
        try:
            return Weight.standard(float(text.split(":", 1)[1]))
        except (ValueError, ZygopsError) as exc:
            raise ConfigError(f"{where}: bad weight {text!r}: {exc}") from exc
    raise ConfigError(f"{where}: unknown weight {text!r}")


@dataclass
class RunConfig:
    """Validated run configuration; `raw` keeps the resolved dict for echoing."""

    u_spec: object
    phi_spec: object
    n: int
    alpha: float | None
    beta: float | None
    nu: Weight | None
    omega: Weight | None
    params: dict
    analysis: AnalysisConfig
    sweep: dict
    verify_suites: list
    output_dir: str | None
    raw: dict = field(repr=False, default_factory=dict)

    def build_symbol(self, spec, where: str) -> AnalyticMap:
        if isinstance(spec, str):
            try:
                return ExpressionMap(spec, params=self.params)
            except ParseError:
                raise
            except ZygopsError as exc:
                raise ConfigError(f"{where}: {exc}") from exc
        if isinstance(spec, dict):
            if "catalog" not in spec:
                raise ConfigError(f"{where}: table form needs a 'catalog' key")
            kwargs = {}
            if "a" in spec:
                kwargs["a"] = _as_complex(spec["a"], f"{where}.a")
            if "alpha" in spec:
                kwargs["alpha"] = float(spec["alpha"])
            if "n" in spec:
                kwargs["n"] = int(spec["n"])
            try:
                return make_family(spec["catalog"], **kwargs)
            except (TypeError, ValueError, ZygopsError) as exc:
                raise ConfigError(f"{where}: {exc}") from exc
        raise ConfigError(f"{where}: expected an expression string or catalog table")

    def build_operator(self) -> OperatorSpec:
        u = self.build_symbol(self.u_spec, "operator.u")
        phi = self.build_symbol(self.phi_spec, "operator.phi")
        return OperatorSpec(u, phi, self.n, validation_grid=self.analysis.grid)

    def space_pair(self) -> SpacePair:
        if self.alpha is None or self.beta is None:
            raise ConfigError("spaces.alpha and spaces.beta are required for this command")
        try:
            return SpacePair(self.alpha, self.beta)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    def weights(self) -> tuple:
        if self.nu is None or self.omega is None:
            raise ConfigError("spaces.nu and spaces.omega are required for weighted-type runs")
        return self.nu, self.omega


def _apply_override(data: dict, dotted: str, value_text: str):
    if "=" in dotted:
        raise ConfigError(f"override key {dotted!r} must not contain '='")
    try:
        value = tomllib.loads(f"v = {value_text}")["v"]
    except tomllib.TOMLDecodeError:
        value = value_text
    node = data
    parts = dotted.split(".")
    for part in parts[:-1]:
        node = node.setdefault(part, {})
        if not isinstance(node, dict):
            raise ConfigError(f"override path {dotted!r} crosses a non-table value")
    node[parts[-1]] = value


def load_config(path: str | Path, overrides=()) -> RunConfig:
    """Read, override, and validate a run configuration."""
    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    except FileNotFoundError as exc:
        raise ConfigError(f"config file not found: {path}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"config syntax error in {path}: {exc}") from exc

    for item in overrides:
        if "=" not in item:
            raise ConfigError(f"--set needs key=value, got {item!r}")
        key, _, value = item.partition("=")
        _apply_override(data, key.strip(), value.strip())

    return _validate(data)


def _validate(data: dict) -> RunConfig:
    op = data.get("operator", {})
    if "u" not in op or "phi" not in op:
        raise ConfigError("[operator] must define u and phi")
    n = op.get("n", 0)
    if not isinstance(n, int) or n < 0:
        raise ConfigError(f"operator.n must be a nonnegative integer, got {n!r}")
    params = {k: _as_complex(v, f"operator.params.{k}")
              for k, v in op.get("params", {}).items()}

    spaces_blk = data.get("spaces", {})
    alpha = spaces_blk.get("alpha")
    beta = spaces_blk.get("beta")
    for name, val in (("alpha", alpha), ("beta", beta)):
        if val is not None and not (isinstance(val, (int, float)) and val > 0):
            raise ConfigError(f"spaces.{name} must be positive, got {val!r}")
    nu = _parse_weight(spaces_blk["nu"], "spaces.nu") if "nu" in spaces_blk else None
    omega = _parse_weight(spaces_blk["omega"], "spaces.omega") if "omega" in spaces_blk else None

    grid_blk = data.get("grid", {})
    for key, limit in GRID_LIMITS.items():
        if key in grid_blk:
            val = grid_blk[key]
            if not isinstance(val, int) or not 1 <= val <= limit:
                raise ConfigError(f"grid.{key} must be an integer in [1, {limit}]")
    try:
        grid = DiskGrid(kmax=grid_blk.get("kmax", 14), angular=grid_blk.get("angular", 256))
        analysis = AnalysisConfig(
            grid=grid,
            eps_levels=grid_blk.get("eps_levels", 12),
            a_levels=grid_blk.get("a_levels", 8),
            a_angles=grid_blk.get("a_angles", 8),
            monomial_count=grid_blk.get("monomials", 200),
            weighted_monomial_count=grid_blk.get("weighted_monomials", 300),
        )
    except ValueError as exc:
        raise ConfigError(f"grid: {exc}") from exc

    sweep = data.get("sweep", {})
    if sweep:
        for key, vals in sweep.items():
            if key in ("alpha", "beta"):
                if not isinstance(vals, list) or not vals or not all(
                        isinstance(v, (int, float)) and v > 0 for v in vals):
                    raise ConfigError(f"sweep.{key} must be a nonempty list of positive numbers")
            elif key == "param":
                if not isinstance(vals, str):
                    raise ConfigError("sweep.param must name an operator parameter")
            elif key == "values":
                if not isinstance(vals, list) or not vals:
                    raise ConfigError("sweep.values must be a nonempty list")
            else:
                raise ConfigError(f"unknown sweep key {key!r}")
        if ("param" in sweep) != ("values" in sweep):
            raise ConfigError("sweep.param and sweep.values go together")
        if not any(k in sweep for k in ("alpha", "beta", "param")):
            raise ConfigError("sweep block needs alpha, beta, or param/values")

    verify_blk = data.get("verify", {})
    suites = verify_blk.get("suites", [])
    if not isinstance(suites, list) or not all(isinstance(s, str) for s in suites):
        raise ConfigError("verify.suites must be a list of suite names")

    out_blk = data.get("output", {})
    output_dir = out_blk.get("dir")
    if output_dir is not None and not isinstance(output_dir, str):
        raise ConfigError("output.dir must be a string")

    return RunConfig(
        u_spec=op["u"],
        phi_spec=op["phi"],
        n=n,
        alpha=float(alpha) if alpha is not None else None,
        beta=float(beta) if beta is not None else None,
        nu=nu,
        omega=omega,
        params=params,
        analysis=analysis,
        sweep=sweep,
        verify_suites=list(suites),
        output_dir=output_dir,
        raw=data,
    )
