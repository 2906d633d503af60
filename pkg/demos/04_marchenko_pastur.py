"""Reduced-density spectrum of a Gaussian matrix vs the Marchenko-Pastur law.

The squared Schmidt values at the row-column cut, scaled by the smaller
cut dimension, are the eigenvalues of an empirical covariance matrix.
For an i.i.d. Gaussian input they converge to the Marchenko-Pastur
density with aspect ratio c = d_min/d_max.  The histogram below is that
comparison for a square matrix (c = 1) plus the KS distance summary.

Run:
  python3 demos/04_marchenko_pastur.py
"""

from aent import mp_compare, sample_gaussian_matrix

SIZE = 512
BINS = 24


def main() -> None:
    matrix = sample_gaussian_matrix(SIZE, SIZE, seed=0)
    report = mp_compare(matrix, bins=BINS, source=f"gaussian-{SIZE}x{SIZE}")
    summary = report.tables["summary"][0]
    print(f"{SIZE}x{SIZE} Gaussian, cut {summary['cut']}, c = {summary['c']:.2f}")
    print(f"KS distance to MP: {summary['ks_distance']:.4f} over {summary['values']} eigenvalues")
    print()
    print(f"{'bin':>12} {'empirical':>10} {'MP law':>8}")
    scale = max(row["mp_density"] for row in report.tables["histogram"])
    for row in report.tables["histogram"]:
        emp = row["empirical_density"]
        law = row["mp_density"]
        bars = "#" * int(round(30 * emp / scale))
        dots = "." * max(int(round(30 * law / scale)) - len(bars), 0)
        print(f"{row['bin_left']:>5.2f}-{row['bin_right']:<6.2f} {emp:>10.4f} {law:>8.4f}  {bars}{dots}")
    print()
    print("(# empirical, . reference where the law sits above the sample)")


if __name__ == "__main__":
    main()
