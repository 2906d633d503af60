"""Log-scaling of attention-matrix entropy with sequence length.

Softmax attention at isotropic initialization concentrates spectral
weight on the row-sum mode; what entanglement remains comes from the
bulk A - (1/T) 11^T and grows like a pure log law,

    S(A) = charge * ln T + const,   charge = sigma2 / (1 + sigma2),

where sigma2 is the squared Frobenius mass of the bulk.  The fit below
measures the slope over a grid of sequence lengths and compares it with
the charge predicted from the largest size alone.

Run:
  python3 demos/03_attention_scaling.py
"""

import math

from aent import cardy_experiment

GRID = (32, 64, 128, 256)
SEEDS = 2


def main() -> None:
    print(f"attention scenes at T in {GRID}, {SEEDS} seeds per size")
    print("(context width 16 T, head width T, query/key std 0.65)")
    print()
    report = cardy_experiment(t_grid=GRID, seeds=SEEDS)
    print(f"{'T':>5} {'S(A) nats':>10} {'S/ln T':>8}")
    for point in report.tables["points"]:
        t, s = point["t"], point["entropy_nats"]
        print(f"{t:>5} {s:>10.4f} {s / math.log(t):>8.4f}")

    fit = report.tables["fit"][0]
    print()
    print(f"fitted slope          {fit['slope']:.4f}")
    print(f"predicted charge      {fit['predicted_charge']:.4f}  (sigma2 = {fit['sigma2']:.4f})")
    print(f"relative deviation    {fit['relative_slope_deviation']:.2%}")
    print("(this grid is trimmed for speed; the fit tightens well below 15%")
    print(" on sizes 64..2048 with 5 seeds, as the cardy subcommand runs it)")
    print()
    print(f"largest-T spectral checks:")
    print(f"  s1      = {fit['s1_largest_t']:.5f}   (mean-field outlier, expect 1)")
    print(f"  p1      = {fit['p1_largest_t']:.5f}   (expect 1/(1+sigma2) = {1 / (1 + fit['sigma2']):.5f})")
    print(f"  Renyi-2 = {fit['renyi2_largest_t']:.4f}   (expect 2 ln(1+sigma2) = {fit['renyi2_predicted']:.4f})")


if __name__ == "__main__":
    main()
