"""Generate ground-truth alignment benchmarks and score methods against them.

The global-affine generator warps a base series with random match, delete,
and insert steps, then rescales, offsets, and optionally adds noise; the
component generator superimposes shared-shape windows at independent
locations and amplitudes.  Both return the true alignment, so any produced
path can be scored by its mean displacement from the truth.
"""

import numpy as np

from tsalign import (
    BandConfig,
    ComponentConfig,
    GlobalAffineConfig,
    WarpConfig,
    adtw,
    component_instance,
    dtw,
    global_affine_instance,
    lardtw,
    mc_score,
    mg_score,
)

n = 200
x = np.linspace(0, 1, n)
base = np.sin(2 * np.pi * x) + 0.5 * np.sin(6 * np.pi * x + 1.0)
sigma = float(np.std(base))
warp = WarpConfig(p_match=0.6, p_delete=0.2, p_insert=0.2)
affine = GlobalAffineConfig(c_range=(0.2, 5.0), e_range=(-sigma, sigma), noise_sigma=0.0)

band = BandConfig(60)
print("global-affine simulation, displacement score M_g (lower is better):")
dtw_scores, adtw_scores = [], []
for seed in range(10):
    inst = global_affine_instance(base, warp, affine, np.random.default_rng(seed))
    dtw_scores.append(mg_score(inst.truth, dtw(base, inst.t, band).path, n))
    adtw_scores.append(mg_score(inst.truth, adtw(base, inst.t, band).path, n))
print(f"  dtw  mean M_g = {np.mean(dtw_scores):.5f}")
print(f"  adtw mean M_g = {np.mean(adtw_scores):.5f}")

print("\ncomponent simulation, component-restricted score M_c:")
cfg = ComponentConfig(n=400, n_components=4, amp_sigma=0.5)
inst = component_instance(cfg, np.random.default_rng(42))
band = BandConfig(200)
for name, path in [("dtw", dtw(inst.s, inst.t, band).path),
                   ("lardtw(w_h=20)", lardtw(inst.s, inst.t, band, 20).path)]:
    print(f"  {name:<15} M_c = {mc_score(inst.truth, path, 400):.5f}")
print(f"  components: {[(c.kind, c.center_s, c.center_t) for c in inst.components]}")
