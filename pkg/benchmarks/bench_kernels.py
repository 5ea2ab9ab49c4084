"""Compare the numba and numpy convolution kernels on desk-model layer sizes.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--batch 2]

The last column shows which kernel the default ``auto`` backend picks.
A full training step is timed at the end under each backend.
"""
import argparse
import time

import numpy as np

from decode3d.autodiff import kernels
from decode3d.autodiff import backward
from decode3d import losses
from decode3d.model import DeCodeNet, ModelConfig

LAYERS = [
    # (cin, cout, extent, stride)
    (1, 8, 64, 1),
    (8, 16, 64, 2),
    (16, 16, 32, 1),
    (32, 32, 16, 1),
    (64, 64, 8, 1),
]


def best_of(fn, repeat):
    fn()    # warm-up (numba compilation, page faults)
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def layer_table(rng, repeat, batch):
    print(f"{'layer':<22}{'pass':<10}{'numba s':>10}{'numpy s':>10}{'speedup':>9}  auto")
    for cin, cout, n, s in LAYERS:
        x = rng.standard_normal((batch, cin, n, n, n)).astype(np.float32)
        w = rng.standard_normal((cout, cin, 3, 3, 3)).astype(np.float32)
        y = kernels.conv3d_forward(x, w, s, 1)
        dy = rng.standard_normal(y.shape).astype(np.float32)
        passes = {
            "forward": lambda: kernels.conv3d_forward(x, w, s, 1),
            "grad_in": lambda: kernels.conv3d_backward_input(dy, w, s, 1, x.shape),
        }
        for name, fn in passes.items():
            t = {}
            for backend in ("numba", "numpy"):
                kernels.set_backend(backend)
                t[backend] = best_of(fn, repeat)
            kernels.set_backend("auto")
            pick = "numba" if kernels._use_numba(y.shape[2:]) else "numpy"
            label = f"{cin}->{cout}@{n}^3 s{s}"
            print(f"{label:<22}{name:<10}{t['numba']:>10.4f}{t['numpy']:>10.4f}"
                  f"{t['numpy'] / t['numba']:>8.2f}x  {pick}")


def step_table(rng, repeat, batch):
    net = DeCodeNet(ModelConfig.desk(conditioning="film", representation="learned", regression=True))
    x = rng.random((batch, 1, 64, 64, 64)).astype(np.float32)
    tab = rng.random((batch, 144)).astype(np.float32)
    g = (rng.random((batch, 1, 64, 64, 64)) < 0.1).astype(np.float32)

    def step():
        out = net.forward(x, tab, train=True)
        loss, _ = losses.total_loss(losses.dice_loss(out.prob, g), losses.focal_loss(out.prob, g))
        backward(loss)
        net.params.zero_grad()

    print(f"\nfull desk training step, batch {batch} (forward + backward)")
    for backend in kernels.BACKENDS:
        kernels.set_backend(backend)
        print(f"  {backend:<6}{best_of(step, repeat):>8.3f} s")
    kernels.set_backend("auto")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--batch", type=int, default=2)
    args = ap.parse_args()
    rng = np.random.default_rng(0)
    layer_table(rng, args.repeat, args.batch)
    step_table(rng, args.repeat, args.batch)


if __name__ == "__main__":
    main()
