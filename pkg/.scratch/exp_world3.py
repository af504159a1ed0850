import sys, time
import numpy as np
from countpp.config import ModelConfig, TrainConfig
from countpp.data import SceneConfig, make_scene
from countpp.pipelines import count_image, iterative_count
from countpp.prompts import ExemplarRef, INPUT_IMAGE_REF, NegativePrompt, PromptSpec
from countpp.training import train
from countpp.model import save_checkpoint

seed = int(sys.argv[1]) if len(sys.argv) > 1 else 0
epochs = int(sys.argv[2]) if len(sys.argv) > 2 else 28

from countpp.data import SceneGenerationError

def train_scene(i):
    rng = np.random.default_rng(10_000_000 * seed + i)
    counts = {"circle": (2, 5), "square": (2, 5)}
    if rng.random() < 0.60:
        counts["ellipse"] = (1, 3)
    if rng.random() < 0.55:
        counts["ring"] = (1, 3)
    cfg = SceneConfig(size=(96, 96), counts=counts, size_range=(11.0, 24.0),
                      aspect_ranges={"ellipse": (0.50, 0.78)})
    while True:
        try:
            return make_scene(int(rng.integers(2**31)), cfg)
        except SceneGenerationError:
            continue

scenes = [train_scene(i) for i in range(260)]
val = [train_scene(100_000 + i) for i in range(16)]
p5_cfg = SceneConfig(size=(112, 112), counts={"circle": (3, 6), "ellipse": (5, 9)},
                     size_range=(15.0, 24.0), aspect_ranges={"ellipse": (0.80, 0.88)}, max_retries=3000)
p6_cfg = SceneConfig(size=(112, 112), counts={"ring": (2, 5), "square": (1, 3)},
                     size_range=(12.0, 22.0), size_ranges={"ring": (24.0, 32.0)}, max_retries=3000)
p5 = [make_scene(9_000_000 + seed * 1000 + i, p5_cfg) for i in range(20)]
p6 = [make_scene(9_500_000 + seed * 1000 + i, p6_cfg) for i in range(20)]

tc = TrainConfig(
    model=ModelConfig(width=64, enhancer_blocks=2, decoder_blocks=2, num_queries=64, seed=seed),
    epochs=epochs, lr=3e-4, batch_size=8, seed=seed, mosaic_per_base=0.2, val_every=2,
    loss_lambda_cls=60.0, vocabulary=("circle", "ellipse", "ring", "square"),
)
t0 = time.time()
res = train(tc, scenes, val_scenes=val)
model = res.model; model.eval()
save_checkpoint(model, f"/root/pkg/.scratch/world3_{seed}.npz")
vals = [round(s.val_mae, 1) for s in res.log if s.val_mae is not None]

def ex(sc, name, k=1):
    return tuple(ExemplarRef(INPUT_IMAGE_REF, b) for b in sc.boxes(name)[:k])

e5a, e5b, e6a, e6b, traces = [], [], [], [], []
for sc in p5:
    gt = sc.count("circle")
    e5a.append(abs(count_image(model, sc.image, PromptSpec(positive_text="circle")).count - gt))
    e5b.append(abs(count_image(model, sc.image, PromptSpec(positive_text="circle",
                    negatives=(NegativePrompt("ellipse", ex(sc, "ellipse")),))).count - gt))
for sc in p6:
    gt = sc.count("ring")
    e6a.append(abs(count_image(model, sc.image, PromptSpec(positive_text="ring")).count - gt))
    r, tr = iterative_count(model, sc.image, PromptSpec(positive_text="ring"), n=3, max_iter=5)
    e6b.append(abs(r.count - gt)); traces.append([t.count for t in tr])
a5, b5, a6, b6 = map(np.mean, (e5a, e5b, e6a, e6b))
print(f"seed={seed} {time.time()-t0:.0f}s vals={vals}")
print(f"  P5: pos={a5:.2f} neg={b5:.2f} r={b5/max(a5,1e-9):.2f} | P6: single={a6:.2f} iter={b6:.2f} r={b6/max(a6,1e-9):.2f}")
print("  p6 gt:", [sc.count("ring") for sc in p6[:6]], "traces:", traces[:6])
