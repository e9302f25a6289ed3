"""Capacity bounds as a function of group order.

Prints the implicit upper bound (largest m with 2^m <= n(m+1)^3), the
simple and refined closed forms, and the lower bounds with and without
an element of order two, for a sweep of group orders.
"""

from gshatter.bounds import build_bound_report, required_group_size


def show() -> None:
    ns = [2, 8, 16, 18, 48, 81, 256, 1024, 2**16, 2**20]
    header = f"{'n':>8} {'implicit':>9} {'simple':>8} {'refined':>9} " \
             f"{'lower(g2)':>10} {'lower':>8}"
    print(header)
    print("-" * len(header))
    for n in ns:
        r = build_bound_report(n)
        refined = f"{r.refined_upper:9.2f}" if r.refined_upper is not None else "        -"
        lot = f"{r.lower_order_two:10.2f}" if r.lower_order_two is not None else "         -"
        lg = f"{r.lower_general:8.2f}" if r.lower_general is not None else "       -"
        print(f"{n:>8} {r.implicit_upper:>9} {r.simple_upper:8.1f} {refined} {lot} {lg}")

    print("\nsmallest group orders the synthesizer needs:")
    print(f"{'m':>3} {'with involution':>16} {'general':>9}")
    for m in range(1, 7):
        print(
            f"{m:>3} {required_group_size(m, 'order_two'):>16} "
            f"{required_group_size(m, 'general'):>9}"
        )


if __name__ == "__main__":
    show()
