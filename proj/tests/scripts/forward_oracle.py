"""Independent numpy forward pass over a WRISTML_FLO_1.0 model file.

Produces the frozen expectations in tests/unit/test_fann_io.cpp:
    python3 tests/scripts/forward_oracle.py tests/data/network_a_seed42.net 0,0,0,0,0
"""
import sys

import numpy as np


def load(path):
    lines = open(path).read().split("\n")
    fields = dict(l.split("=", 1) for l in lines if "=" in l)
    sizes = [int(x) for x in fields["layer_sizes"].split()]
    acts = fields["activations"].split()
    start = lines.index("connections:") + 1
    vals = [float(t) for l in lines[start:] for t in l.split()]
    mats, k = [], 0
    for a, b in zip(sizes, sizes[1:]):
        n = (a + 1) * b
        mats.append(np.array(vals[k:k + n]).reshape(a + 1, b))
        k += n
    return mats, acts[1:]


def forward(model, x):
    mats, acts = model
    a = np.array(x, dtype=np.float64)
    for w, act in zip(mats, acts):
        z = a @ w[:-1] + w[-1]
        a = np.tanh(z) if act == "tanh" else z
    return a


if __name__ == "__main__":
    model = load(sys.argv[1])
    for arg in sys.argv[2:]:
        print(", ".join(repr(float(v)) for v in forward(model, [float(t) for t in arg.split(",")])))
