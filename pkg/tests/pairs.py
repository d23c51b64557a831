"""Subgroup pairs drawn from the point stabilizers of the constructed groups."""
from functools import lru_cache

from equivect.cellcomplex import complex_for, fundamental_domain, stabilizer_of_label
from equivect.chartheory import quotient_generator
from equivect.errors import EquivectError
from equivect.o3group import construct_group, legal_rows


def point_subgroups(R):
    cx = complex_for(R)
    fd = fundamental_domain(R)
    dm1 = fd.d_minus1_label
    labs = set(cx.labels) | {"x"}
    labs |= {f"[{p},{dm1}]" for p in fd.path_labels}
    out = {"R": R}
    for lab in sorted(labs):
        out[lab] = stabilizer_of_label(R, lab)
    return out


@lru_cache(maxsize=None)
def cyclic_pairs(max_n: int = 8):
    """(row, N1 label, N2 label, N1, N2) with N1 normal in N2 and cyclic quotient."""
    seen = set()
    out = []
    for f, n in legal_rows(max_n):
        R = construct_group(f, n)
        subs = point_subgroups(R)
        for l1, N1 in subs.items():
            for l2, N2 in subs.items():
                if N1 == N2 or not N1.issubset(N2) or (N1, N2) in seen:
                    continue
                seen.add((N1, N2))
                try:
                    quotient_generator(N1, N2)
                except EquivectError:
                    continue
                out.append(((f, n), l1, l2, N1, N2))
    return tuple(out)
