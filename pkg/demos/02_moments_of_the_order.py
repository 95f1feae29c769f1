"""Moments of log_p |G| as q-series in q = 1/p, then evaluated with a certified tail."""
from cohen_lenstra import eisenstein, mehnert_moment, moment_value
from cohen_lenstra.measure import format_poly, mehnert_f_poly

for k in range(1, 5):
    print(f"f_{k} =", format_poly(mehnert_f_poly(k)))

# substituting Eisenstein series gives the moments as power series
print()
print("E_2 =", eisenstein(2, 6))
for k in range(1, 5):
    print(f"M_{k} =", mehnert_moment(k, 6))

print("\n       " + "".join(f"{'p=' + str(p):>11s}" for p in (2, 3, 5, 7, 11, 13, 17)))
for name in ("M1", "V", "M2", "M3", "M4"):
    vals = [moment_value(name, p) for p in (2, 3, 5, 7, 11, 13, 17)]
    print(f"{name:6s} " + "".join(f"{float(v.value):11.5f}" for v in vals))

# every entry above is certified much better than the printed precision
worst = max(moment_value(n, p).tail_bound for n in ("M1", "M4") for p in (2, 17))
print("\nlargest tail bound in the table:", float(worst))
