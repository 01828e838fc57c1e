"""Bootstrap model averaging: edge strength, direction and confidence bands."""

# %%
from importlib.resources import files

from catbn import benchmarks
from catbn.averaging import (averaged_network, classify_confidence, direction_reliable,
                             read_strength_tsv, to_display_graph, to_tsv)
from catbn.constraints import build_constraints
from catbn.export import to_dot
from catbn.params_sim import ancestral_sample

d = ancestral_sample(benchmarks.tiered(), 3_000, seed=6)
c = build_constraints(benchmarks.TIERED_TIERS, benchmarks.TIERED_TARGET)

# %%
# 100 replicates keeps the demo quick; 1000 is the usual choice.
net = averaged_network(d, "pc_stable", constraints=c, replicates=100, master_seed=2017)
print(to_tsv(net))

# %%
g, bands = to_display_graph(net)
print(to_dot(g, bands))

# %%
# Published strength tables can be rendered the same way without relearning.
with (files("catbn") / "data" / "harvey_pc_stable.tsv").open() as fh:
    table = read_strength_tsv(fh, replicate_count=1000)
for e, band in classify_confidence(table):
    arrow = "->" if direction_reliable(e) else "--"
    print(f"{e.source:8s} {arrow} {e.target:8s} {e.strength:.3f} {band.value}")
