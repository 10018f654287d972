"""Standardized CDFs from `hexperc clt` against the normal law.

usage: python docs/plot_clt.py OUT_DIR S [png]
"""
import glob
import os
import sys

import matplotlib.pyplot as plt
import numpy as np
import pandas as pd
from scipy.stats import norm

out_dir, s = sys.argv[1], int(sys.argv[2])
target = sys.argv[3] if len(sys.argv) > 3 else os.path.join(out_dir, f"clt_s{s}.png")

files = sorted(glob.glob(os.path.join(out_dir, f"clt_s{s}_n*.csv")),
               key=lambda f: int(f.rsplit("_n", 1)[1].split(".")[0]))
fig, ax = plt.subplots(figsize=(7, 4.5))
for f in files:
    df = pd.read_csv(f, comment="#")
    n = int(f.rsplit("_n", 1)[1].split(".")[0])
    ax.step(df["x"], df["cdf"], where="post", label=f"n={n}")
xs = np.linspace(-4, 4, 400)
ax.plot(xs, norm.cdf(xs), "k--", lw=1, label="normal")
ax.set_xlim(-4, 4)
ax.set_xlabel("standardized fraction of percolating fluids")
ax.set_ylabel("CDF")
ax.set_title(f"s={s}")
ax.legend()
fig.tight_layout()
fig.savefig(target, dpi=150)
print(target)
