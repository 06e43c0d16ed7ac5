"""Quickstart: load a CSV, mine significant patterns, inspect the report.

We synthesize a small table where one categorical value is strongly tied to
the target, write it to CSV, and mine it under conditional testing.  The
planted association should come back as the top discovery; everything else
in the language should stay below the significance threshold.
"""

import tempfile
from pathlib import Path

from sigmine import LanguageConfig, Mode, RunConfig, load_csv, run_discovery, to_csv
from sigmine.oracle import CatColumn, Planted, SyntheticSpec, generate
from sigmine.language import Form, Selector

# One planted column (value 0 is the needle) plus three noise columns.
spec = SyntheticSpec(
    m=3000,
    columns=(
        CatColumn((0.25, 0.75)),
        CatColumn((0.5, 0.5)),
        CatColumn((0.3, 0.3, 0.4)),
        CatColumn((0.5, 0.5)),
    ),
    target_rule=Planted(Selector(0, Form.EQUALS, 0.0), p_in=0.85, p_out=0.15),
    seed=2024,
)

with tempfile.TemporaryDirectory() as td:
    csv_path = Path(td) / "demo.csv"
    to_csv(generate(spec), csv_path)
    dataset = load_csv(csv_path)  # schema inference: low-arity columns -> categorical

print(f"loaded {dataset.m} transactions, {dataset.n_features} features, "
      f"label rate {dataset.mean_target():.3f}")

cfg = RunConfig(mode=Mode.CONDITIONAL, delta=0.05, c=10, seed=1,
                language=LanguageConfig(z=2))
discoveries, report = run_discovery(dataset, cfg)

print(f"\nthreshold epsilon = {report.epsilon:.5f} "
      f"(d_tilde={report.d_tilde:.5f}, omega={report.omega:.4f})")
print(f"{len(discoveries)} significant patterns:\n")
print(f"{'pattern':<32}{'quality':>9}{'freq':>7}{'margin':>9}")
for d in discoveries[:10]:
    print(f"{d.pattern.describe(dataset):<32}{d.quality:>9.4f}"
          f"{d.frequency:>7.3f}{d.threshold_margin:>9.4f}")
if len(discoveries) > 10:
    print(f"... and {len(discoveries) - 10} more")
