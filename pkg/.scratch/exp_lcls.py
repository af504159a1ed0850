import sys, time
import numpy as np
from countpp.config import ModelConfig, TrainConfig
from countpp.data import SceneConfig, make_scene
from countpp.pipelines import count_image, iterative_count
from countpp.prompts import ExemplarRef, INPUT_IMAGE_REF, NegativePrompt, PromptSpec
from countpp.training import train

lam_cls = float(sys.argv[1]); lr = float(sys.argv[2]); epochs = int(sys.argv[3])
seed = int(sys.argv[4]) if len(sys.argv) > 4 else 0
base = dict(size=(96, 96), size_range=(10.0, 24.0), aspect_ranges={"ellipse": (0.55, 0.8)})
train_world = SceneConfig(counts={"circle": (2, 8), "ellipse": (2, 8)}, **base)
test_world = SceneConfig(counts={"circle": (3, 8), "ellipse": (6, 12)}, tint=(0.75, 1.0, 1.15), max_retries=2000, **base)
scenes = [make_scene(i, train_world) for i in range(240)]
val = [make_scene(5_000_000 + i, train_world) for i in range(16)]
held = [make_scene(8_000_000 + i, train_world) for i in range(20)]
tint = [make_scene(9_000_000 + i, test_world) for i in range(20)]

tc = TrainConfig(
    model=ModelConfig(width=64, enhancer_blocks=2, decoder_blocks=2, num_queries=64, seed=seed, ),
    epochs=epochs, lr=lr, batch_size=8, seed=seed, mosaic_per_base=0.2, val_every=2, loss_lambda_cls=lam_cls,
)
t0 = time.time()
res = train(tc, scenes, val_scenes=val)
model = res.model; model.eval()
vals = [round(s.val_mae, 2) for s in res.log if s.val_mae is not None]
def ex(sc, name, k=1):
    return tuple(ExemplarRef(INPUT_IMAGE_REF, b) for b in sc.boxes(name)[:k])
err = {"text": [], "iter": [], "gtex": [], "pos_t": [], "neg_t": []}
for sc in held:
    gt = sc.count("circle")
    err["text"].append(abs(count_image(model, sc.image, PromptSpec(positive_text="circle")).count - gt))
    r3, _ = iterative_count(model, sc.image, PromptSpec(positive_text="circle"), n=3, max_iter=5)
    err["iter"].append(abs(r3.count - gt))
    err["gtex"].append(abs(count_image(model, sc.image, PromptSpec(positive_text="circle", positive_exemplars=ex(sc, "circle", 3))).count - gt))
for sc in tint:
    gt = sc.count("circle")
    err["pos_t"].append(abs(count_image(model, sc.image, PromptSpec(positive_text="circle", positive_exemplars=ex(sc, "circle"))).count - gt))
    err["neg_t"].append(abs(count_image(model, sc.image, PromptSpec(positive_text="circle", positive_exemplars=ex(sc, "circle"),
                                         negatives=(NegativePrompt("ellipse", ex(sc, "ellipse")),))).count - gt))
blank = np.full((96, 96, 3), 0.3, dtype=np.float32)
bl = count_image(model, blank, PromptSpec(positive_text="circle")).count
t, it, ge, pt, nt = (np.mean(err[k]) for k in ("text", "iter", "gtex", "pos_t", "neg_t"))
print(f"lam_cls={lam_cls} lr={lr} ep={epochs}: {time.time()-t0:.0f}s vals={vals}")
print(f"  held: text={t:.2f} iter={it:.2f} (r={it/max(t,1e-9):.2f}) gtex={ge:.2f} | tint P5: pos={pt:.2f} neg={nt:.2f} (r={nt/max(pt,1e-9):.2f}) | blank={bl}")
