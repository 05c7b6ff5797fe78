# # Estimating extreme risk from 30 samples
#
# The target quantity is the extremal upper-semideviation at the 1% level:
# the expected exceedance of a cost above its mean, restricted to the worst
# 1% of outcomes.  With only a few dozen samples the empirical estimator
# can only look at the largest handful of points; the EVT route instead
# fits a Generalized Pareto tail and extrapolates beyond the data.

from evtrisk import RandomStream, evt_estimate, get_distribution

dist = get_distribution("pareto2")
alpha = 0.01
truth = dist.extremal_semideviation(alpha)
print(f"true value for Pareto(2) at alpha={alpha}: {truth:.6f}")

# Draw one small data set and run the full pipeline: sort, threshold at the
# 0.90 empirical quantile, probability-weighted-moment fit, closed-form
# evaluation with hypothesis checks.

data = dist.sample(30, RandomStream(2023))
report = evt_estimate(data, alpha=alpha)

print("\nfitted tail parameters:")
print(f"  exceedances k = {report.params.k} of m = {report.params.m}")
print(f"  threshold     = {report.params.threshold:.4f}")
print(f"  shape (gamma) = {report.params.gamma:.4f}   (true tail shape 0.5)")
print(f"  scale         = {report.params.scale:.4f}")
print(f"  assumptions   = {report.assumptions}")

print("\nestimates vs truth:")
print(f"  EVT estimator       = {report.rho_evt:.6f}   "
      f"(error {report.rho_evt - truth:+.6f})")
print(f"  typical estimator   = {report.rho_typical:.6f}   "
      f"(error {report.rho_typical - truth:+.6f})")

# One draw proves nothing, so repeat over many independent samples and
# compare the error distributions.  At this sample size the EVT estimator's
# absolute error is smaller on most draws.

import numpy as np

from evtrisk import run_trial, trial_seed

errors_typ, errors_evt = [], []
for t in range(1_000):
    rec = run_trial(dist, 30, alpha, trial_seed(99, "pareto2", 30, t), truth, t)
    if rec.err_evt is not None:
        errors_typ.append(rec.err_typical)
        errors_evt.append(rec.err_evt)

errors_typ, errors_evt = np.array(errors_typ), np.array(errors_evt)
print(f"\nover {errors_typ.size} repeated draws at m=30:")
print(f"  mean |error|  typical = {np.abs(errors_typ).mean():.4f}   "
      f"EVT = {np.abs(errors_evt).mean():.4f}")
print(f"  mean error    typical = {errors_typ.mean():+.4f}   "
      f"EVT = {errors_evt.mean():+.4f}")
print(f"  EVT wins on   {np.mean(np.abs(errors_evt) < np.abs(errors_typ)):.0%} of draws")
