"""Output entropies over a channel grid for inputs sharing one spectrum."""

from gaussmaj.cli import SWEEP_FIELDS, sweep_rows

rows = sweep_rows([0.3, 1.0, 2.0], [0.0, 1.0], dim=6, seed=0)
print(" ".join(f"{f:>15}" for f in SWEEP_FIELDS))
for row in rows:
    print(" ".join(f"{v:>15.6f}" if isinstance(v, float) else f"{str(v):>15}" for v in row))
