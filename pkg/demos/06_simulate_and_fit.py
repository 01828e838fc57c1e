"""Sample from a network, refit its CPTs, compare with exact marginals."""

# %%
import numpy as np

from catbn import benchmarks
from catbn.params_sim import ancestral_sample, exact_marginal, fit_cpts

bn = benchmarks.tiered()
d = ancestral_sample(bn, 50_000, seed=7)
fitted = fit_cpts(d, bn.dag, laplace=1.0)

for name, cpt in bn.cpts.items():
    err = np.abs(fitted.cpts[name].table - cpt.table).max()
    print(f"{name:8s} parents={list(cpt.parents)} max |error|={err:.4f}")

# %%
for name in bn.names:
    emp = np.bincount(d.column(name), minlength=bn.variable(name).arity) / d.n_rows
    print(name, "exact", exact_marginal(bn, name).round(4), "sample", emp.round(4))
