"""Optional matplotlib helper shared by the narrative scripts."""

from pathlib import Path

OUT = Path(__file__).resolve().parent / "figures"

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:  # the scripts still print their numbers
    plt = None


def save(fig, name):
    OUT.mkdir(exist_ok=True)
    path = OUT / name
    fig.savefig(path, dpi=120, bbox_inches="tight")
    print(f"wrote {path}")
