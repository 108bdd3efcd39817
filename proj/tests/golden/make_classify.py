# Regenerates classify.json from the classification rules, written out
# independently of the C++ implementation.
import json

def cls(g, n, orientable):
    if orientable:
        if g == 0:
            return "EmptyComplex" if n <= 3 else ("DiscreteComplex" if n == 4 else "Supported")
        if g == 1 and n <= 1:
            return "FareyModel"
        return "Supported"
    if (g == 1 and n <= 2) or (g == 2 and n <= 1):
        return "NonOrientableSporadic"
    return "NonOrientableUnsupported"

rows = [{"genus": g, "punctures": n, "orientable": o, "class": cls(g, n, o)}
        for o in (True, False) for g in range(6) for n in range(11)]
with open("classify.json", "w") as f:
    json.dump(rows, f, indent=1)
    f.write("\n")
