"""Experiment: pair world (circle vs ellipse, same color) — does a desk model
(a) count circles with text-only, (b) improve with negative text, (c) improve
with iterative pseudo-exemplars?"""
import sys, time
import numpy as np
from countpp.config import ModelConfig, TrainConfig
from countpp.data import DEFAULT_PALETTE, SceneConfig, make_scene
from countpp.pipelines import count_image, iterative_count
from countpp.prompts import NegativePrompt, PromptSpec
from countpp.training import train

seed = int(sys.argv[1]) if len(sys.argv) > 1 else 0
epochs = int(sys.argv[2]) if len(sys.argv) > 2 else 12
lr = float(sys.argv[3]) if len(sys.argv) > 3 else 3e-4
n_scenes = int(sys.argv[4]) if len(sys.argv) > 4 else 300

world = SceneConfig(
    size=(96, 96),
    counts={"circle": (2, 8), "ellipse": (2, 8)},
    size_range=(10.0, 24.0),
)
scenes = [make_scene(seed * 100_000 + i, world) for i in range(n_scenes)]
test = [make_scene(9_000_000 + seed * 1000 + i, world) for i in range(30)]

tc = TrainConfig(
    model=ModelConfig(width=64, enhancer_blocks=2, decoder_blocks=2, num_queries=100, seed=seed),
    epochs=epochs, lr=lr, batch_size=8, seed=seed, mosaic_per_base=0.2,
)
t0 = time.time()
res = train(tc, scenes, val_scenes=test[:10],
            progress=lambda s: print(f"  ep{s.epoch} total={s.total:.3f} cls={s.l_cls:.4f} giou={s.l_giou:.3f}"
                                     + (f" val={s.val_mae:.2f}" if s.val_mae is not None else ""), flush=True))
print(f"train time {time.time()-t0:.0f}s")
model = res.model
model.eval()

err_pos, err_neg, err_it = [], [], []
for sc in test:
    gt = sc.count("circle")
    r1 = count_image(model, sc.image, PromptSpec(positive_text="circle"))
    r2 = count_image(model, sc.image, PromptSpec(positive_text="circle", negatives=(NegativePrompt("ellipse"),)))
    r3, tr = iterative_count(model, sc.image, PromptSpec(positive_text="circle"), n=3, max_iter=5)
    err_pos.append(abs(r1.count - gt)); err_neg.append(abs(r2.count - gt)); err_it.append(abs(r3.count - gt))
mae_pos, mae_neg, mae_it = map(lambda e: float(np.mean(e)), (err_pos, err_neg, err_it))
print(f"seed={seed} MAE text-only={mae_pos:.3f}  +neg={mae_neg:.3f} (ratio {mae_neg/max(mae_pos,1e-9):.2f})  iterative={mae_it:.3f} (ratio {mae_it/max(mae_pos,1e-9):.2f})")
