"""Encode temporal ordering as a blacklist and see it steer orientation."""

# %%
from catbn import benchmarks
from catbn.constraints import admissibility, build_constraints, violations
from catbn.params_sim import ancestral_sample
from catbn.pc_stable import pc_stable

c = build_constraints(benchmarks.TIERED_TIERS, benchmarks.TIERED_TARGET)
print(len(c.blacklist), "prohibited directions")
print("CstDst vs Rsk:", admissibility(c, "CstDst", "Rsk").value)
print("Evc vs Rsk:   ", admissibility(c, "Evc", "Rsk").value)

# %%
d = ancestral_sample(benchmarks.tiered(), 50_000, seed=5)
free = pc_stable(d)
tiered = pc_stable(d, constraints=c)
print("unconstrained:", free)
print("with tiers:   ", tiered)
print("violations:", violations(tiered, c))

# %%
# Forbidding a pair outright removes it from the search.
c2 = build_constraints(benchmarks.TIERED_TIERS, "Evc", [("Nbr", "FamFrds"), ("FamFrds", "Nbr")])
print(pc_stable(d, constraints=c2).adjacent("Nbr", "FamFrds"))
