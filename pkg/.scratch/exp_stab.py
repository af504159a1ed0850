import sys, time
import numpy as np
from countpp.config import ModelConfig, TrainConfig
from countpp.data import SceneConfig, make_scene
from countpp.pipelines import count_image, iterative_count
from countpp.prompts import ExemplarRef, INPUT_IMAGE_REF, NegativePrompt, PromptSpec
from countpp.training import train

lr = float(sys.argv[1]); batch = int(sys.argv[2]); epochs = int(sys.argv[3]); clip = float(sys.argv[4])
seed = 0
base = dict(size=(96, 96), size_range=(10.0, 24.0), aspect_ranges={"ellipse": (0.55, 0.8)})
train_world = SceneConfig(counts={"circle": (2, 8), "ellipse": (2, 8)}, **base)
scenes = [make_scene(seed * 100_000 + i, train_world) for i in range(240)]
val = [make_scene(5_000_000 + i, train_world) for i in range(10)]
held = [make_scene(8_000_000 + i, train_world) for i in range(20)]  # in-domain held-out

tc = TrainConfig(
    model=ModelConfig(width=64, enhancer_blocks=2, decoder_blocks=2, num_queries=64, seed=seed),
    epochs=epochs, lr=lr, batch_size=batch, seed=seed, mosaic_per_base=0.2, val_every=3, grad_clip=clip,
)
t0 = time.time()
res = train(tc, scenes, val_scenes=val)
model = res.model; model.eval()
vals = [round(s.val_mae, 2) for s in res.log if s.val_mae is not None]
err = {"text": [], "iter": [], "gtex": []}
for sc in held:
    gt = sc.count("circle")
    err["text"].append(abs(count_image(model, sc.image, PromptSpec(positive_text="circle")).count - gt))
    r3, _ = iterative_count(model, sc.image, PromptSpec(positive_text="circle"), n=3, max_iter=5)
    err["iter"].append(abs(r3.count - gt))
    exb = sc.boxes("circle")[:3]
    spec_gt = PromptSpec(positive_text="circle", positive_exemplars=tuple(ExemplarRef(INPUT_IMAGE_REF, b) for b in exb))
    err["gtex"].append(abs(count_image(model, sc.image, spec_gt).count - gt))
t, it, ge = (np.mean(err[k]) for k in ("text", "iter", "gtex"))
print(f"lr={lr} b={batch} ep={epochs} clip={clip}: {time.time()-t0:.0f}s vals={vals}")
print(f"   held-out: text={t:.2f} iter={it:.2f} (r={it/max(t,1e-9):.2f}) gt-ex={ge:.2f}")
