"""Joint-to-product ratio P(all n percolate) / p^n against s, from `hexperc figure4`.

usage: python docs/plot_figure4.py figure4_n3.csv [png]
"""
import sys

import matplotlib.pyplot as plt
import pandas as pd

src = sys.argv[1]
target = sys.argv[2] if len(sys.argv) > 2 else src.rsplit(".", 1)[0] + ".png"
df = pd.read_csv(src, comment="#")

fig, ax = plt.subplots(figsize=(7, 4.5))
ax.errorbar(df["s"], df["ratio"], yerr=[df["ratio"] - df["ratio_lo"], df["ratio_hi"] - df["ratio"]],
            marker="o", capsize=3, label="Monte Carlo")
exact = df.dropna(subset=["exact_ratio"])
if not exact.empty:
    ax.plot(exact["s"], exact["exact_ratio"], "kx", ms=9, label="exact")
ax.axhline(1.0, color="grey", lw=0.8)
ax.set_xlabel("s")
ax.set_ylabel("P(all) / p^n")
ax.set_title(f"n={int(df['n'].iloc[0])}")
ax.legend()
fig.tight_layout()
fig.savefig(target, dpi=150)
print(target)
