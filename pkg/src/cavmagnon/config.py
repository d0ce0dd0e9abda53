"""Run configuration: INI-style text (or JSON) with linear frequencies in Hz.

Layout::

    [run]
    mode = effective            # or: physical

    [params]                    # Hz for every frequency/rate, K for T
    delta_a_tilde = 9e6
    G = 4e6
    ...

    [axis1]                     # optional; [axis2] likewise
    param = DeltaM
    start = -2
    stop = 2
    count = 101
    normalize = omega_b         # start/stop then count in units of omega_b

    [output]
    path = sweep.csv
    format = csv
    emit_plot_script = false

Omitted effective-mode parameters fall back to the reference operating point
(:func:`cavmagnon.model.table1_setup`). Physical mode has no defaults for
``g0``; every other key defaults to the same reference values.
"""

from __future__ import annotations

import configparser
import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional

from .errors import ConfigError, CavMagnonError
from .model import TWO_PI, PhysicalParams, Setup, table1_physical, table1_setup
from .sweep import Axis, Param

HZ_KEYS_EFFECTIVE = (
    "delta_a_tilde", "delta_1", "delta_2", "G", "g1", "g2", "kappa_a", "kappa_1",
    "kappa_2", "gamma_b", "omega_b", "omega_a", "omega_0",
)
HZ_KEYS_PHYSICAL = (
    "omega_a", "omega_b", "omega_1", "omega_2", "omega_0", "kappa_a", "kappa_1",
    "kappa_2", "gamma_b", "g0", "g1", "g2", "Omega",
)
NBAR_KEYS = ("nbar_a", "nbar_1", "nbar_2", "nbar_b")
SECTIONS = {
    "run": ("mode",),
    "axis1": ("param", "start", "stop", "count", "normalize"),
    "axis2": ("param", "start", "stop", "count", "normalize"),
    "output": ("path", "format", "emit_plot_script"),
}
NORMALIZERS = ("omega_b", "kappa_a", "G", "mK")
FORMATS = ("csv", "json")


def _effective_defaults():
    s = table1_setup()
    out = {k: getattr(s, k) / TWO_PI for k in HZ_KEYS_EFFECTIVE}
    out["T"] = s.T
    return out


def _physical_defaults():
    p = table1_physical()
    out = {k: getattr(p, k) / TWO_PI for k in HZ_KEYS_PHYSICAL if k != "g0"}
    out["T"] = p.T
    return out


@dataclass
class RunConfig:
    """Validated configuration; ``params`` keeps the user's Hz values verbatim."""

    mode: str
    params: Dict[str, object]
    axes: List[Dict[str, object]] = field(default_factory=list)
    output: Dict[str, object] = field(default_factory=dict)

    # -- model construction -------------------------------------------------
    def setup(self) -> Setup:
        p = self.params
        pins = {k: float(p[k]) for k in NBAR_KEYS if k in p}
        printed = p.get("damping_sign", "physical") == "printed"
        if self.mode == "physical":
            phys = PhysicalParams(
                **{k: TWO_PI * float(p[k]) for k in HZ_KEYS_PHYSICAL}, T=float(p["T"])
            )
            s = Setup.from_physical(phys, **pins)
            return s.with_(printed_damping_sign=printed)
        kwargs = {k: TWO_PI * float(p[k]) for k in HZ_KEYS_EFFECTIVE}
        return Setup(**kwargs, T=float(p["T"]), printed_damping_sign=printed, **pins)

    def resolved_axes(self, base: Optional[Setup] = None) -> List[Axis]:
        base = base or self.setup()
        refs = {"omega_b": base.omega_b, "kappa_a": base.kappa_a, "G": base.G, "mK": 1e-3}
        axes = []
        for spec in self.axes:
            param = Param(spec["param"])
            start, stop = float(spec["start"]), float(spec["stop"])
            norm = spec.get("normalize")
            if norm:
                axes.append(Axis.scaled(param, start, stop, int(spec["count"]), refs[norm], norm))
            elif param is Param.Temperature:
                axes.append(Axis(param, start, stop, int(spec["count"]), 1.0, "K"))
            else:
                axes.append(Axis(param, TWO_PI * start, TWO_PI * stop, int(spec["count"]), TWO_PI, "2pi_Hz"))
        return axes

    # -- serialisation ------------------------------------------------------
    def dump(self) -> str:
        lines = ["[run]", f"mode = {self.mode}", "", "[params]"]
        for k, v in self.params.items():
            lines.append(f"{k} = {v!r}" if isinstance(v, float) else f"{k} = {v}")
        for i, spec in enumerate(self.axes, start=1):
            lines += ["", f"[axis{i}]"]
            for k, v in spec.items():
                lines.append(f"{k} = {v!r}" if isinstance(v, float) else f"{k} = {v}")
        if self.output:
            lines += ["", "[output]"]
            for k, v in self.output.items():
                lines.append(f"{k} = {str(v).lower() if isinstance(v, bool) else v}")
        return "\n".join(lines) + "\n"


def _line_index(text):
    """``(section, key) -> line number`` for diagnostics."""
    index = {}
    section = None
    for n, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        m = re.match(r"\[([^\]]+)\]", stripped)
        if m:
            section = m.group(1).strip()
            index[(section, None)] = n
            continue
        m = re.match(r"([^=:#;\s][^=:]*?)\s*[=:]", stripped)
        if m and section:
            index[(section, m.group(1))] = n
    return index


def _read_sections(text, source):
    """Raw ``{section: {key: str}}`` plus a line index (empty for JSON)."""
    if text.lstrip().startswith("{") or source.endswith(".json"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError("malformed JSON", [f"line {exc.lineno}: {exc.msg}"]) from exc
        if not isinstance(data, dict) or not all(isinstance(v, dict) for v in data.values()):
            raise ConfigError("malformed JSON", ["top level must map section names to objects"])
        return {s: dict(v) for s, v in data.items()}, {}
    parser = configparser.ConfigParser(
        interpolation=None, inline_comment_prefixes=("#", ";"), strict=True
    )
    parser.optionxform = str  # keys are case-sensitive (G vs g1)
    try:
        parser.read_string(text, source=source)
    except configparser.Error as exc:
        lineno = getattr(exc, "lineno", None)
        where = f"line {lineno}: " if lineno else ""
        raise ConfigError("malformed configuration", [where + str(exc).splitlines()[0]]) from exc
    return {s: dict(parser.items(s)) for s in parser.sections()}, _line_index(text)


def parse_config(text: str, source: str = "<config>") -> RunConfig:
    """Parse and schema-validate configuration text."""
    sections, lines = _read_sections(text, source)
    diags = []

    def where(section, key=None):
        n = lines.get((section, key)) or lines.get((section, None))
        loc = f"line {n}: " if n else ""
        return f"{loc}[{section}]" + (f" {key}" if key else "")

    if not sections:
        raise ConfigError("empty configuration", ["a [run] section with 'mode' is required"])

    for s in sections:
        if s not in SECTIONS and s != "params":
            diags.append(f"{where(s)}: unknown section")
    run = sections.get("run")
    if run is None:
        diags.append("[run]: missing section (needs 'mode = effective|physical')")
        mode = None
    else:
        for k in run:
            if k not in SECTIONS["run"]:
                diags.append(f"{where('run', k)}: unknown key")
        mode = str(run.get("mode", "")).strip()
        if mode not in ("effective", "physical"):
            diags.append(f"{where('run', 'mode')}: must be 'effective' or 'physical', got {mode!r}")

    raw_params = sections.get("params", {})
    params: Dict[str, object] = {}
    if mode in ("effective", "physical"):
        hz_keys = HZ_KEYS_EFFECTIVE if mode == "effective" else HZ_KEYS_PHYSICAL
        allowed = set(hz_keys) | {"T", "damping_sign"} | set(NBAR_KEYS)
        params.update(_effective_defaults() if mode == "effective" else _physical_defaults())
        for k, v in raw_params.items():
            if k not in allowed:
                diags.append(f"{where('params', k)}: unknown key for {mode} mode")
                continue
            if k == "damping_sign":
                v = str(v).strip()
                if v not in ("physical", "printed"):
                    diags.append(f"{where('params', k)}: must be 'physical' or 'printed'")
                params[k] = v
                continue
            try:
                fv = float(v)
            except (TypeError, ValueError):
                diags.append(f"{where('params', k)}: not a number: {v!r}")
                continue
            if k in NBAR_KEYS or k == "T" or k.startswith(("kappa", "gamma", "omega")) or k in ("G", "g0", "Omega"):
                if fv < 0:
                    diags.append(f"{where('params', k)}: must be >= 0")
            params[k] = fv
        if mode == "physical" and "g0" not in params:
            diags.append(f"{where('params')}: physical mode requires g0")

    axes = []
    for name in ("axis1", "axis2"):
        spec = sections.get(name)
        if spec is None:
            continue
        clean: Dict[str, object] = {}
        for k, v in spec.items():
            if k not in SECTIONS[name]:
                diags.append(f"{where(name, k)}: unknown key")
        try:
            clean["param"] = Param(str(spec.get("param", "")).strip()).value
        except ValueError:
            diags.append(f"{where(name, 'param')}: one of {', '.join(p.value for p in Param)}")
        for k in ("start", "stop"):
            try:
                clean[k] = float(spec[k])
            except KeyError:
                diags.append(f"{where(name)}: missing '{k}'")
            except (TypeError, ValueError):
                diags.append(f"{where(name, k)}: not a number")
        try:
            count = int(str(spec.get("count", "")).strip())
            if count < 2:
                raise ValueError
            clean["count"] = count
        except ValueError:
            diags.append(f"{where(name, 'count')}: integer >= 2 required")
        if clean.get("start") is not None and clean.get("start") == clean.get("stop"):
            diags.append(f"{where(name)}: start and stop coincide")
        norm = spec.get("normalize")
        if norm not in (None, "", "none"):
            if norm not in NORMALIZERS:
                diags.append(f"{where(name, 'normalize')}: one of {', '.join(NORMALIZERS)}")
            clean["normalize"] = norm
        axes.append(clean)
    if "axis2" in sections and "axis1" not in sections:
        diags.append(f"{where('axis2')}: axis2 given without axis1")
    if len(axes) == 2 and axes[0].get("param") == axes[1].get("param"):
        diags.append("[axis2] param: must differ from axis1")

    output: Dict[str, object] = {}
    for k, v in sections.get("output", {}).items():
        if k not in SECTIONS["output"]:
            diags.append(f"{where('output', k)}: unknown key")
        elif k == "format":
            if v not in FORMATS:
                diags.append(f"{where('output', k)}: csv or json")
            output[k] = v
        elif k == "emit_plot_script":
            flag = str(v).strip().lower()
            if flag not in ("true", "false", "1", "0", "yes", "no"):
                diags.append(f"{where('output', k)}: boolean expected")
            output[k] = flag in ("true", "1", "yes")
        else:
            output[k] = str(v)

    if diags:
        raise ConfigError("invalid configuration", diags)
    cfg = RunConfig(mode=mode, params=params, axes=axes, output=output)
    try:
        base = cfg.setup()
        cfg.resolved_axes(base)
    except (CavMagnonError, ValueError, KeyError) as exc:
        raise ConfigError("invalid configuration", [f"[params]: {exc}"]) from exc
    return cfg


def load_config(path) -> RunConfig:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}", [str(exc)]) from exc
    return parse_config(text, source=str(path))
