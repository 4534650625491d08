"""Interpolation/binary mean-probe ratio between n=2^20 and n=2^10 on
uniform data, across several seeds."""
import numpy as np

from search_sim import binary_probes, dataset, gap_cv, interp_probes

for seed in range(1, 6):
    rng = np.random.default_rng(seed)
    means = {}
    for e in (10, 20):
        a = dataset("uniform", 2**e, rng)
        ts = [a[i] for i in rng.integers(0, len(a), size=10_000)]
        means[e] = (sum(binary_probes(a, t) for t in ts) / 1e4,
                    sum(interp_probes(a, t) for t in ts) / 1e4, gap_cv(a))
    print(seed, "interp ratio %.3f" % (means[20][1] / means[10][1]),
          "binary ratio %.3f" % (means[20][0] / means[10][0]),
          "cv %.4f %.4f" % (means[10][2], means[20][2]))
