"""CLI invocations whose outputs are pinned byte-for-byte under tests/golden.

Run this file directly to regenerate the golden files.
"""

from pathlib import Path

from treecap.cli import main

GOLDEN = Path(__file__).parent / "golden"

GEN = {
    "comb.json": ["gen", "--comb", "depth0=10", "N=100", "b=100"],
    "cantor.json": ["gen", "--cantor", "a=2", "b=4", "N=4"],
    "cantor_rational.json": ["gen", "--cantor", "a=3/2", "b=5", "N=5"],
    "nested.json": ["gen", "--nested", "8:2,64:4"],
}

# commands reading a generated sequence; "{seq}" is replaced by its path
DERIVED = {
    "comb_check.csv": ("comb.json", ["check", "--seq", "{seq}", "--all"]),
    "cantor_check.json": ("cantor.json", ["check", "--seq", "{seq}", "--all", "--format", "json"]),
    "comb_cap.json": ("comb.json", ["cap", "--seq", "{seq}", "--at", "z0", "--method", "both"]),
    "cantor_family.json": ("cantor.json", ["interpolate", "--seq", "{seq}"]),
    "cantor_weaksim.json": ("cantor.json", ["interpolate", "--seq", "{seq}", "--weaksim", "z0"]),
    "comb_fraction.csv": (None, ["report", "comb-fraction", "--b", "4", "--n-max", "60"]),
    "comb_depth.csv": (None, ["report", "comb-depth", "--depth0", "4", "9", "16"]),
}


def produce(outdir: Path) -> dict[str, bytes]:
    outdir.mkdir(parents=True, exist_ok=True)
    for name, argv in GEN.items():
        assert main([*argv, "-o", str(outdir / name)]) == 0
    for name, (seq, argv) in DERIVED.items():
        argv = [a.replace("{seq}", str(outdir / seq)) if seq else a for a in argv]
        assert main([*argv, "-o", str(outdir / name)]) == 0
    return {p.name: p.read_bytes() for p in sorted(outdir.iterdir())}


if __name__ == "__main__":
    produce(GOLDEN)
