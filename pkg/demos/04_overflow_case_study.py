# # Case-study pipeline: monthly overflow volumes
#
# The estimation pipeline is meant for real, hard-to-model systems where
# data is scarce -- e.g. combined sewer networks, where each data point is
# a month's total overflow volume and only a few years of records exist.
#
# The repository does NOT ship such a data set.  Bundled instead is a
# synthetic 20-point fixture with the same shape (heavy-tailed monthly
# volumes in millions of cubic metres, seeded Pareto(2) draws); anyone with
# the real data can point `evtrisk estimate --input` at their own CSV and
# read off the same report.

from evtrisk import load_csv, evt_estimate, synthetic_overflow_path

path = synthetic_overflow_path()
print("fixture:", path.name, "(synthetic, NOT real overflow records)")

dataset = load_csv(str(path))
print("months of data:", dataset.values.size)
print("volumes, 10^6 m^3:", ", ".join(f"{v:.1f}" for v in sorted(dataset.values)))

# Run the pipeline at the 1% level: with m = 20 the threshold lands on the
# 18th order statistic, leaving k = 2 exceedances for the tail fit.

report = evt_estimate(dataset.values, alpha=0.01)

print(f"\nsample mean                 = {report.sample_mean:8.3f}  x 10^6 m^3")
print(f"exceedances used            = {report.params.k}")
print(f"fitted tail shape           = {report.params.gamma:8.3f}")
print(f"1%-level value-at-risk      = {report.var_tail:8.3f}  x 10^6 m^3")
print(f"1%-level CVaR               = {report.cvar_tail:8.3f}  x 10^6 m^3")
print(f"EVT semideviation estimate  = {report.rho_evt:8.3f}  x 10^6 m^3")
print(f"typical estimate            = {report.rho_typical:8.3f}  x 10^6 m^3")

# The hypothesis checks behind the closed form are part of the report: the
# level must sit inside the fitted tail (alpha < k/m), the fitted shape
# must stay below 1, and the model's value-at-risk must exceed the sample
# mean.  All three hold here.

print("\nassumption checks:", report.assumptions)

# A fitted shape this close to 1 says the fixture's tail is very heavy --
# and the typical estimator reads several times higher than the EVT one,
# which is exactly the small-m regime where averaging a couple of order
# statistics over-approximates a 1%-level quantity.
