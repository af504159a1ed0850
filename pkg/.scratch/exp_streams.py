"""Two-stream world: circle-scenes and ellipse-scenes never co-occur in
training, so the pair carries no trained contrast."""
import sys, time
import numpy as np
from countpp.config import ModelConfig, TrainConfig
from countpp.data import SceneConfig, SceneGenerationError, make_scene
from countpp.pipelines import count_image, iterative_count
from countpp.prompts import ExemplarRef, INPUT_IMAGE_REF, NegativePrompt, PromptSpec
from countpp.training import make_mosaic, train
from countpp.model import save_checkpoint

seed = int(sys.argv[1]) if len(sys.argv) > 1 else 0

def robust(cfg, s):
    while True:
        try:
            return make_scene(s, cfg)
        except SceneGenerationError:
            s += 7_919
def stream_scene(i, salt=0):
    rng = np.random.default_rng(10_000_000 * seed + 31 * salt + i)
    if rng.random() < 0.55:  # stream A
        counts = {"circle": (2, 5), "square": (2, 5)}
        if rng.random() < 0.5:
            counts["ring"] = (1, 2)
    else:  # stream B
        counts = {"ellipse": (2, 5), "square": (2, 5)}
        if rng.random() < 0.5:
            counts["triangle"] = (1, 2)
    cfg = SceneConfig(size=(96, 96), counts=counts, size_range=(11.0, 24.0),
                      aspect_ranges={"ellipse": (0.55, 0.80)})
    return robust(cfg, int(rng.integers(2**31))), ("A" if "circle" in counts else "B")

pairs = [stream_scene(i) for i in range(260)]
scenes = [s for s, _ in pairs]
a_pool = [s for s, t in pairs if t == "A"]
b_pool = [s for s, t in pairs if t == "B"]
rngm = np.random.default_rng(seed + 555)
mosaics = []
for pool in (a_pool, b_pool):
    for _ in range(20):
        picks = rngm.integers(0, len(pool), size=4)
        mosaics.append(make_mosaic([pool[int(j)] for j in picks]))
train_set = scenes + mosaics
val = [stream_scene(i, salt=1)[0] for i in range(16)]

p5_cfg = SceneConfig(size=(112, 112), counts={"circle": (3, 6), "ellipse": (5, 9)},
                     size_range=(13.0, 22.0), aspect_ranges={"ellipse": (0.55, 0.80)}, max_retries=3000)
p5 = [robust(p5_cfg, 9_000_000 + seed * 1000 + i) for i in range(20)]
dense_cfg = SceneConfig(size=(112, 112), counts={"circle": (12, 18)}, size_range=(10.0, 16.0), max_retries=3000)
dense = [robust(dense_cfg, 6_000_000 + seed * 1000 + i) for i in range(20)]

tc = TrainConfig(
    model=ModelConfig(width=64, enhancer_blocks=2, decoder_blocks=2, num_queries=64, seed=seed),
    epochs=36, lr=3e-4, batch_size=8, seed=seed, mosaic_per_base=0.0, val_every=2,
    loss_lambda_cls=60.0, vocabulary=(),  # per-scene prompts
    feedback_exemplars=0.3,
)
t0 = time.time()
res = train(tc, train_set, val_scenes=val)
model = res.model; model.eval()
save_checkpoint(model, f"/root/pkg/.scratch/streams_{seed}.npz")

def ex(sc, name, k=3):
    boxes = sorted(sc.boxes(name), key=lambda b: -b.w * b.h)[:k]
    return tuple(ExemplarRef(INPUT_IMAGE_REF, b) for b in boxes)

e5a, e5b = [], []
for sc in p5:
    gt = sc.count("circle")
    e5a.append(abs(count_image(model, sc.image, PromptSpec(positive_text="circle")).count - gt))
    e5b.append(abs(count_image(model, sc.image, PromptSpec(positive_text="circle",
                    negatives=(NegativePrompt("ellipse", ex(sc, "ellipse")),))).count - gt))
e6a, e6b, traces = [], [], []
for sc in dense:
    gt = sc.count("circle")
    e6a.append(abs(count_image(model, sc.image, PromptSpec(positive_text="circle")).count - gt))
    r, tr = iterative_count(model, sc.image, PromptSpec(positive_text="circle"), n=3, max_iter=5)
    e6b.append(abs(r.count - gt)); traces.append([t.count for t in tr])
a5, b5, a6, b6 = map(np.mean, (e5a, e5b, e6a, e6b))
print(f"STREAMS seed={seed} {time.time()-t0:.0f}s")
print(f"  P5: pos={a5:.2f} neg={b5:.2f} r={b5/max(a5,1e-9):.2f} | P6-dense: single={a6:.2f} iter={b6:.2f} r={b6/max(a6,1e-9):.2f}")
print("  dense traces:", traces[:5])
