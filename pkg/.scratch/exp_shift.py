"""Distribution-shift world: train ellipses aspect (0.55,0.8); test (0.8,0.92),
distractor-heavy. Measure P5 arms + P6 iterative + blank + 5-circle sanity."""
import sys, time
import numpy as np
from countpp.config import ModelConfig, TrainConfig
from countpp.data import SceneConfig, make_scene
from countpp.pipelines import count_image, iterative_count
from countpp.prompts import ExemplarRef, INPUT_IMAGE_REF, NegativePrompt, PromptSpec
from countpp.training import train
from countpp.model import save_checkpoint

seed = int(sys.argv[1]) if len(sys.argv) > 1 else 0
epochs = int(sys.argv[2]) if len(sys.argv) > 2 else 20

train_world = SceneConfig(size=(96, 96), counts={"circle": (2, 8), "ellipse": (2, 8)},
                          size_range=(10.0, 24.0), aspect_ranges={"ellipse": (0.55, 0.80)})
test_world = SceneConfig(size=(96, 96), counts={"circle": (3, 8), "ellipse": (8, 14)},
                         size_range=(10.0, 24.0), aspect_ranges={"ellipse": (0.80, 0.92)}, max_retries=2000)
scenes = [make_scene(seed * 100_000 + i, train_world) for i in range(240)]
val = [make_scene(5_000_000 + seed * 1000 + i, train_world) for i in range(10)]
test = [make_scene(9_000_000 + seed * 1000 + i, test_world) for i in range(20)]

tc = TrainConfig(
    model=ModelConfig(width=64, enhancer_blocks=2, decoder_blocks=2, num_queries=64, seed=seed),
    epochs=epochs, lr=5e-4, batch_size=8, seed=seed, mosaic_per_base=0.2, val_every=3,
)
t0 = time.time()
res = train(tc, scenes, val_scenes=val)
model = res.model; model.eval()
save_checkpoint(model, f"/root/pkg/.scratch/shift_{seed}.npz")
vals = [round(s.val_mae,2) for s in res.log if s.val_mae is not None]

def pick_exemplar(sc, name):
    boxes = sc.boxes(name)
    return (ExemplarRef(INPUT_IMAGE_REF, boxes[0]),) if boxes else ()

err = {"pos": [], "neg": [], "text": [], "iter": []}
for sc in test:
    gt = sc.count("circle")
    spec_pos = PromptSpec(positive_text="circle", positive_exemplars=pick_exemplar(sc, "circle"))
    spec_neg = PromptSpec(positive_text="circle", positive_exemplars=pick_exemplar(sc, "circle"),
                          negatives=(NegativePrompt("ellipse", pick_exemplar(sc, "ellipse")),))
    err["pos"].append(abs(count_image(model, sc.image, spec_pos).count - gt))
    err["neg"].append(abs(count_image(model, sc.image, spec_neg).count - gt))
    err["text"].append(abs(count_image(model, sc.image, PromptSpec(positive_text="circle")).count - gt))
    r3, _ = iterative_count(model, sc.image, PromptSpec(positive_text="circle"), n=3, max_iter=5)
    err["iter"].append(abs(r3.count - gt))
blank = np.full((96, 96, 3), 0.3, dtype=np.float32)
blank_count = count_image(model, blank, PromptSpec(positive_text="circle")).count
# 5-circle sanity on TRAIN distribution
sane_world = SceneConfig(size=(96, 96), counts={"circle": (5, 5)}, size_range=(12.0, 22.0))
sane = [abs(count_image(model, make_scene(7_000_000 + i, sane_world).image, PromptSpec(positive_text="circle")).count - 5) for i in range(10)]
p, n_, t, it = (np.mean(err[k]) for k in ("pos", "neg", "text", "iter"))
print(f"seed={seed} {time.time()-t0:.0f}s vals={vals}")
print(f"  P5: pos={p:.2f} +neg={n_:.2f} ratio={n_/max(p,1e-9):.2f} | P6: text={t:.2f} iter={it:.2f} ratio={it/max(t,1e-9):.2f} | blank={blank_count} sane_err={np.mean(sane):.2f}")
