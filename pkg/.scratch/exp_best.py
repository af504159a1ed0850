import sys, time
import numpy as np
from countpp.config import ModelConfig, TrainConfig
from countpp.data import SceneConfig, make_scene
from countpp.pipelines import count_image, iterative_count
from countpp.prompts import NegativePrompt, PromptSpec
from countpp.training import train
from countpp.model import save_checkpoint

seed = int(sys.argv[1]) if len(sys.argv) > 1 else 0
epochs, lr, n_scenes, K = 24, 1e-3, 240, 64
world = SceneConfig(size=(96, 96), counts={"circle": (2, 8), "ellipse": (2, 8)}, size_range=(10.0, 24.0))
scenes = [make_scene(seed * 100_000 + i, world) for i in range(n_scenes)]
val = [make_scene(5_000_000 + seed * 1000 + i, world) for i in range(10)]
test = [make_scene(9_000_000 + seed * 1000 + i, world) for i in range(20)]
tc = TrainConfig(
    model=ModelConfig(width=64, enhancer_blocks=2, decoder_blocks=2, num_queries=K, seed=seed),
    epochs=epochs, lr=lr, batch_size=8, seed=seed, mosaic_per_base=0.2, val_every=3,
)
t0 = time.time()
res = train(tc, scenes, val_scenes=val)
model = res.model; model.eval()
save_checkpoint(model, f"/root/pkg/.scratch/pair_best_{seed}.npz")
vals = [s.val_mae for s in res.log if s.val_mae is not None]
err = {"text": [], "neg": [], "iter": []}
for sc in test:
    gt = sc.count("circle")
    err["text"].append(abs(count_image(model, sc.image, PromptSpec(positive_text="circle")).count - gt))
    err["neg"].append(abs(count_image(model, sc.image, PromptSpec(positive_text="circle", negatives=(NegativePrompt("ellipse"),))).count - gt))
    r3, _ = iterative_count(model, sc.image, PromptSpec(positive_text="circle"), n=3, max_iter=5)
    err["iter"].append(abs(r3.count - gt))
blank = np.full((96, 96, 3), 0.3, dtype=np.float32)
rb = count_image(model, blank, PromptSpec(positive_text="circle"))
t = np.mean(err['text']); n_ = np.mean(err['neg']); it = np.mean(err['iter'])
print(f"seed={seed} {time.time()-t0:.0f}s vals={np.round(vals,2)} | MAE text={t:.2f} +neg={n_:.2f} (r={n_/max(t,1e-9):.2f}) iter={it:.2f} (r={it/max(t,1e-9):.2f}) blank={rb.count}")
