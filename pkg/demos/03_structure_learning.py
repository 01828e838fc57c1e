"""Learn a CPDAG with PC-stable and Inter-IAMB and score it against the truth."""

# %%
from catbn import benchmarks
from catbn.export import to_dot
from catbn.graph import cpdag_of, shd
from catbn.inter_iamb import inter_iamb, markov_blankets
from catbn.params_sim import ancestral_sample
from catbn.pc_stable import PcConfig, learn_skeleton_pcstable, pc_stable

bn = benchmarks.tiered()
truth = cpdag_of(bn.dag)
print("true CPDAG:", truth)

d = ancestral_sample(bn, 50_000, seed=4)

# %%
skel, seps = learn_skeleton_pcstable(d, PcConfig(alpha=0.05))
print("skeleton edges:", skel.n_edges())
for pair, s in sorted(seps.items(), key=lambda kv: sorted(kv[0])):
    print("  sep", sorted(pair), "by", sorted(s))

# %%
g_pc = pc_stable(d)
print("PC-stable  :", g_pc, "SHD", shd(g_pc, truth))

# %%
print("blankets:", {k: sorted(v) for k, v in markov_blankets(d).items()})
g_ia = inter_iamb(d)
print("Inter-IAMB :", g_ia, "SHD", shd(g_ia, truth))

# %%
# Paste into any Graphviz viewer.
print(to_dot(g_pc))
