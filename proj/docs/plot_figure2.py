"""P(exactly k of n fluids percolate) against s, from `hexperc figure2`.

usage: python docs/plot_figure2.py figure2_n3.csv [png]
"""
import sys

import matplotlib.pyplot as plt
import pandas as pd

src = sys.argv[1]
target = sys.argv[2] if len(sys.argv) > 2 else src.rsplit(".", 1)[0] + ".png"
df = pd.read_csv(src, comment="#")
n = int(df["n"].iloc[0])

fig, ax = plt.subplots(figsize=(7, 4.5))
for k in range(n + 1):
    ax.errorbar(df["s"], df[f"b{k}"],
                yerr=[df[f"b{k}"] - df[f"b{k}_lo"], df[f"b{k}_hi"] - df[f"b{k}"]],
                marker="o", capsize=3, label=f"k={k}")
ax.set_xlabel("s")
ax.set_ylabel("P(exactly k percolate)")
ax.set_title(f"n={n}")
ax.legend()
fig.tight_layout()
fig.savefig(target, dpi=150)
print(target)
