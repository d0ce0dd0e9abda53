"""Parameter presets regenerating every figure panel as data grids.

Every preset starts from :func:`cavmagnon.model.table1_setup` (the reference
operating point) and changes only what its panel states explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Tuple

from .model import TWO_PI, Setup, table1_setup
from .sweep import DEFAULT_COUNT_1D, DEFAULT_COUNT_2D, Axis, Param


@dataclass(frozen=True)
class PresetRun:
    """One curve or density panel: a base point plus one or two axes."""

    name: str
    base: Setup
    axes: Tuple[Axis, ...]
    settings: Dict[str, object] = field(default_factory=dict)


@dataclass(frozen=True)
class Preset:
    fig_id: str
    summary: str
    observables: Tuple[str, ...]
    runs: Tuple[PresetRun, ...]


_REF = table1_setup()
OMEGA_B = _REF.omega_b
KAPPA_A = _REF.kappa_a
G_REF = 4 * KAPPA_A


def _bath_fields(s: Setup):
    return {"T_K": s.T, "omega_a_Hz": s.omega_a / TWO_PI, "omega_0_Hz": s.omega_0 / TWO_PI}


def _settings(s: Setup, **extra):
    out = {
        "delta_a_tilde/omega_b": s.delta_a_tilde / OMEGA_B,
        "delta_1/omega_b": s.delta_1 / OMEGA_B,
        "delta_2/omega_b": s.delta_2 / OMEGA_B,
        "G/kappa_a": s.G / KAPPA_A,
        "g1/G": s.g1 / s.G if s.G else 0.0,
        "g2/G": s.g2 / s.G if s.G else 0.0,
        "kappa_1/kappa_a": s.kappa_1 / KAPPA_A,
        "kappa_2/kappa_a": s.kappa_2 / KAPPA_A,
        "omega_b/2pi_Hz": s.omega_b / TWO_PI,
        "kappa_a/2pi_Hz": s.kappa_a / TWO_PI,
        "gamma_b/2pi_Hz": s.gamma_b / TWO_PI,
        "omega_b_rad_s": s.omega_b,
        "kappa_a_rad_s": s.kappa_a,
        "gamma_b_rad_s": s.gamma_b,
    }
    out.update(_bath_fields(s))
    out.update(extra)
    return out


def _run(name, base, *axes, **extra):
    return PresetRun(name, base, tuple(axes), _settings(base, **extra))


def _fmt(x):
    return f"{x:g}".replace(".", "p")


def _detuning_axis(param, n, lo=-2.0, hi=2.0):
    return Axis.scaled(param, lo, hi, n, OMEGA_B, "omega_b")


def _temperature_axis(n):
    return Axis.scaled(Param.Temperature, 1.0, 300.0, n, 1e-3, "mK")


def _kappa_axis(n):
    return Axis.scaled(Param.KappaM, 0.1, 10.0, n, KAPPA_A, "kappa_a")


def _coupling_axis(param, n, lo=0.0, hi=2.0):
    return Axis.scaled(param, lo, hi, n, G_REF, "G")


def build_presets(n1=DEFAULT_COUNT_1D, n2=DEFAULT_COUNT_2D) -> Dict[str, Preset]:
    """All figure presets at the requested grid resolutions."""
    ref = table1_setup()
    single = ref.with_(g1=G_REF)  # one sphere: g2 stays 0
    double = ref.with_(g1=G_REF, g2=G_REF)
    P: Dict[str, Preset] = {}

    def add(fig_id, summary, observables, runs):
        P[fig_id] = Preset(fig_id, summary, tuple(observables), tuple(runs))

    add(
        "fig2a",
        "E_N^{ab} vs cavity detuning Delta_a~/omega_b in [0,2], no magnons, "
        "G/kappa_a = 1, 3, 5, T = 20 mK",
        ["EN_ab"],
        [
            _run(f"fig2a_G{g}", ref.with_(G=g * KAPPA_A),
                 _detuning_axis(Param.DeltaATilde, n1, 0.0, 2.0))
            for g in (1, 3, 5)
        ],
    )
    add(
        "fig2b",
        "E_N^{ab} vs bath temperature 1-300 mK, no magnons, G = 4 kappa_a, "
        "Delta_a~ = 0.9 omega_b",
        ["EN_ab"],
        [_run("fig2b", ref, _temperature_axis(n1))],
    )
    for fig_id, km in (("fig3a", 1), ("fig3b", 10)):
        base = single.with_(kappa_1=km * KAPPA_A)
        add(
            fig_id,
            f"E_N^{{ab}} density vs Delta_m/omega_b and g_m/G, one sphere, "
            f"kappa_m = {km} kappa_a, G = 4 kappa_a, Delta_a~ = 0.9 omega_b",
            ["EN_ab"],
            [_run(fig_id, base, _detuning_axis(Param.Delta1, n2),
                  _coupling_axis(Param.G1, n2),
                  reading_axes="rows: Delta_m/omega_b, columns: g_m/G (caption axes)",
                  reading_text="the discussion reads this panel as a g_m scan; any fixed-"
                               "Delta_m column of the grid is that scan")],
        )
    add(
        "fig3c",
        "E_N^{ab}, E_N^{am}, E_N^{bm} vs Delta_m/omega_b, one sphere, g_m = G, "
        "kappa_m = 2 kappa_a",
        ["EN_ab", "EN_am1", "EN_bm1"],
        [_run("fig3c", single.with_(kappa_1=2 * KAPPA_A), _detuning_axis(Param.Delta1, n1))],
    )
    add(
        "fig3d",
        "E_N^{ab} vs Delta_m/omega_b in [0,1.5], one sphere, g_m = G, "
        "kappa_m/kappa_a = 2, 5, 10",
        ["EN_ab"],
        [
            _run(f"fig3d_kappa{k}", single.with_(kappa_1=k * KAPPA_A),
                 _detuning_axis(Param.Delta1, n1, 0.0, 1.5))
            for k in (2, 5, 10)
        ],
    )
    add(
        "fig3e",
        "R_tau^{abm} vs Delta_m/omega_b, one sphere, kappa_m = kappa_a, "
        "g_m/G = 0.2, 0.6, 1",
        ["R_abm1"],
        [
            _run(f"fig3e_gm{_fmt(r)}", ref.with_(g1=r * G_REF), _detuning_axis(Param.Delta1, n1))
            for r in (0.2, 0.6, 1.0)
        ],
    )
    for fig_id, km in (("fig4a", 1), ("fig4b", 2)):
        add(
            fig_id,
            f"E_N^{{m1m2}} density vs Delta_1/omega_b and Delta_2/omega_b, "
            f"g_m = G = 4 kappa_a, kappa_m = {km} kappa_a",
            ["EN_m1m2"],
            [_run(fig_id, double.with_(kappa_1=km * KAPPA_A, kappa_2=km * KAPPA_A),
                  _detuning_axis(Param.Delta1, n2), _detuning_axis(Param.Delta2, n2))],
        )
    opposite = double.with_(delta_1=-OMEGA_B, delta_2=OMEGA_B)
    add(
        "fig5a",
        "E_N^{m1m2} density vs g_1/G and g_2/G, Delta_1 = -omega_b, "
        "Delta_2 = omega_b, kappa_m = kappa_a",
        ["EN_m1m2"],
        [_run("fig5a", opposite, _coupling_axis(Param.G1, n2), _coupling_axis(Param.G2, n2))],
    )
    add(
        "fig5b",
        "E_N^{ab} and E_N^{m1m2} vs g_m/G, Delta_1 = -omega_b, Delta_2 = omega_b, "
        "kappa_m = kappa_a",
        ["EN_ab", "EN_m1m2"],
        [_run("fig5b", opposite, _coupling_axis(Param.Gm, n1))],
    )
    add(
        "fig5ac",
        "E_N^{ab} and E_N^{m1m2} at Delta_1 = -Delta_2 = -omega_b: vs kappa_m/kappa_a "
        "in [0.1,10] with g_m = G (panel a), and vs bath temperature with "
        "kappa_m = kappa_a for g_m/G = 0.5 (panel b) and 1 (panel c)",
        ["EN_ab", "EN_m1m2"],
        [
            _run("fig5ac_a", opposite, _kappa_axis(n1)),
            _run("fig5ac_b_gm0p5", opposite.with_(g1=0.5 * G_REF, g2=0.5 * G_REF),
                 _temperature_axis(n1)),
            _run("fig5ac_c_gm1", opposite, _temperature_axis(n1)),
        ],
    )
    for fig_id, key, d_opt in (("fig6", "R_am1m2", -1.0), ("fig7", "R_bm1m2", -0.5)):
        what = "R_tau^{am1m2}" if fig_id == "fig6" else "R_tau^{bm1m2}"
        add(
            f"{fig_id}a",
            f"{what} density vs Delta_1/omega_b and Delta_2/omega_b, g_m = G, "
            "kappa_m = kappa_a, T = 20 mK",
            [key],
            [_run(f"{fig_id}a", double, _detuning_axis(Param.Delta1, n2),
                  _detuning_axis(Param.Delta2, n2))],
        )
        add(
            f"{fig_id}b",
            f"{what} vs Delta_m/omega_b (both spheres), kappa_m = kappa_a, "
            "g_m/G = 0.4, 0.6, 1",
            [key],
            [
                _run(f"{fig_id}b_gm{_fmt(r)}", ref.with_(g1=r * G_REF, g2=r * G_REF),
                     _detuning_axis(Param.DeltaM, n1))
                for r in (0.4, 0.6, 1.0)
            ],
        )
        at_opt = double.with_(delta_1=d_opt * OMEGA_B, delta_2=d_opt * OMEGA_B)
        add(
            f"{fig_id}c",
            f"{what} vs kappa_m/kappa_a at Delta_1 = Delta_2 = {d_opt:g} omega_b, g_m = G; "
            "inset: vs bath temperature at kappa_m = kappa_a",
            [key],
            [
                _run(f"{fig_id}c", at_opt, _kappa_axis(n1)),
                _run(f"{fig_id}c_inset", at_opt, _temperature_axis(n1)),
            ],
        )
    return P


FIGURE_IDS = (
    "fig2a", "fig2b", "fig3a", "fig3b", "fig3c", "fig3d", "fig3e", "fig4a", "fig4b",
    "fig5a", "fig5b", "fig5ac", "fig6a", "fig6b", "fig6c", "fig7a", "fig7b", "fig7c",
)


def get_preset(fig_id, n1=DEFAULT_COUNT_1D, n2=DEFAULT_COUNT_2D) -> Preset:
    presets = build_presets(n1, n2)
    try:
        return presets[fig_id]
    except KeyError:
        raise KeyError(f"unknown figure id {fig_id!r}; valid ids: {', '.join(FIGURE_IDS)}") from None
