"""Max uniton numbers from root-system data.

Prints the width bound r(G) for the nine families of compact simple
groups, then sweeps all canonical elements of a chosen type and lists
the symmetric spaces they fiber over with the resulting bounds r(N).
The group table is recomputed from Cartan matrices on every run; none
of the values are stored anywhere in the package.
"""

from unitons import build_root_system, group_max_uniton, symmetric_space_survey

GROUPS = [
    ("SU_n", "A", lambda n: n - 1, range(2, 9)),
    ("SO_{2n+1}", "B", lambda n: n, range(2, 7)),
    ("Sp_n", "C", lambda n: n, range(2, 7)),
    ("SO_{2n}", "D", lambda n: n, range(3, 8)),
    ("G_2", "G", lambda n: 2, [2]),
    ("F_4", "F", lambda n: 4, [4]),
    ("E_6", "E", lambda n: 6, [6]),
    ("E_7", "E", lambda n: 7, [7]),
    ("E_8", "E", lambda n: 8, [8]),
]


def main():
    print("group width bounds r(G)")
    for label, letter, to_rank, params in GROUPS:
        vals = [(n, group_max_uniton(build_root_system(letter, to_rank(n)))) for n in params]
        body = "  ".join(f"n={n}: {r}" for n, r in vals)
        print(f"  {label:11s} {body}")

    print()
    print("canonical elements of B_2 and the spaces they project to")
    rs = build_root_system("B", 2)
    for rec in symmetric_space_survey(rs):
        names = ", ".join(rec.names) if rec.names else "(group itself / point)"
        print(f"  marks {rec.marks}  height {rec.height}  -> {names}")


if __name__ == "__main__":
    main()
