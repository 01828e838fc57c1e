"""Rank candidate causes of an outcome by mutual information and keep the informative ones."""

# %%
from catbn import benchmarks
from catbn.params_sim import ancestral_sample
from catbn.select import rank_features, select_features

bn = benchmarks.tiered()
d = ancestral_sample(bn, 50_000, seed=3)

for r in rank_features(d, "Evc"):
    print(f"{r.name:8s} MI={r.mi:.4f}  fraction of H(Evc)={r.fraction_of_target_entropy:.4f}")

# %%
# Keep variables whose MI exceeds 1% of the outcome's entropy.
# Eld and D_Eld are d-separated from Evc in the generating graph and drop out.
print(select_features(d, "Evc", 0.01))

# %%
# Raising the threshold only ever removes variables.
for frac in (0.01, 0.07, 0.1, 0.2):
    print(frac, select_features(d, "Evc", frac))
