# %% [markdown]
# # Driving the command-line tool
#
# The ``cavmagnon`` entry point reads a small INI file with frequencies in
# Hz. Here we write one, evaluate a point, run a sweep and regenerate a
# preset, all inside a temporary directory.

# %%
import csv
import json
import tempfile
from pathlib import Path

from cavmagnon.cli import main

work = Path(tempfile.mkdtemp())
cfg = work / "point.ini"
cfg.write_text("""\
[run]
mode = effective

[params]
G = 4e6
delta_a_tilde = 9e6
g1 = 4e6
delta_1 = -10e6
kappa_1 = 2e6
""")
status = main(["point", str(cfg), "--out", str(work / "point.json")])
doc = json.loads((work / "point.json").read_text())
print("exit", status, {k: round(v, 4) for k, v in doc["measures"].items()})

# %%
sweep = work / "sweep.ini"
sweep.write_text(cfg.read_text() + """
[axis1]
param = Delta1
start = -2
stop = 2
count = 21
normalize = omega_b
""")
main(["sweep", str(sweep), "--out", str(work / "sweep.csv")])
rows = list(csv.DictReader((work / "sweep.csv").open()))
print(rows[0].keys())
print([r["EN_bm1"] for r in rows[:4]])

# %%
main(["reproduce", "fig3d", "--count1d", "31", "--out", str(work / "fig3d")])
print(json.loads((work / "fig3d" / "manifest.json").read_text())["summary"])
