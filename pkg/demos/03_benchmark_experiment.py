# # Benchmarking both estimators across sample sizes
#
# For each (distribution, m) cell the harness repeats the draw-fit-estimate
# loop and summarizes signed errors against the exact ground truth, with
# quartile bands.  The output is plot-ready: one CSV row per cell.
#
# This demo runs a reduced grid (two distributions, five sample sizes, 400
# trials) in a few seconds; the defaults in `ExperimentConfig` give the
# desk-scale 2,000-trial version, and `trials=10000` the full-scale one.

from evtrisk import ExperimentConfig, run_experiment
from evtrisk.cli import summary_row, write_summaries_csv, CSV_HEADER

config = ExperimentConfig(
    distributions=("pareto2", "tstudent5"),
    m_values=(20, 30, 40, 60, 99),
    trials=400,
    alpha=0.01,
    master_seed=1729,
)
summaries = run_experiment(config)

# Every run with the same configuration produces identical output, for any
# worker count; seeds are derived per trial from the master seed.

print(f"{'dist':12s} {'m':>3s} {'valid':>7s} {'mean err (typical)':>19s} "
      f"{'mean err (EVT)':>15s}")
for s in summaries:
    print(f"{s.dist:12s} {s.m:3d} {s.evt_valid_fraction:7.2%} "
          f"{s.mean_err_typical:19.5f} {s.mean_err_evt:15.5f}")

# The qualitative picture mirrors the small-sample story: at m around 20-40
# the EVT estimator's error is far smaller for heavy-tailed costs, and both
# estimators improve as m grows.
#
# Writing the CSV produces the same format as `evtrisk benchmark`:

write_summaries_csv(summaries, "benchmark_demo.csv")
print("\nwrote benchmark_demo.csv with header:")
print(" ", CSV_HEADER)
print("first row:", summary_row(summaries[0]))
