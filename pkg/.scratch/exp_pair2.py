import sys, time
import numpy as np
from countpp.config import ModelConfig, TrainConfig
from countpp.data import SceneConfig, make_scene
from countpp.pipelines import count_image, iterative_count
from countpp.prompts import NegativePrompt, PromptSpec
from countpp.training import train

seed, epochs, lr, n_scenes, K = 0, 30, 5e-4, 240, 64
world = SceneConfig(size=(96, 96), counts={"circle": (2, 8), "ellipse": (2, 8)}, size_range=(10.0, 24.0))
scenes = [make_scene(seed * 100_000 + i, world) for i in range(n_scenes)]
test = [make_scene(9_000_000 + seed * 1000 + i, world) for i in range(30)]

tc = TrainConfig(
    model=ModelConfig(width=64, enhancer_blocks=2, decoder_blocks=2, num_queries=K, seed=seed),
    epochs=epochs, lr=lr, batch_size=8, seed=seed, mosaic_per_base=0.2, val_every=10,
)
t0 = time.time()
res = train(tc, scenes, val_scenes=test[:10],
            progress=lambda s: print(f"  ep{s.epoch} total={s.total:.3f} cls={s.l_cls:.4f} center={s.l_center:.4f} giou={s.l_giou:.3f}"
                                     + (f" val={s.val_mae:.2f}" if s.val_mae is not None else ""), flush=True))
print(f"train {time.time()-t0:.0f}s")
model = res.model; model.eval()

err_pos, err_neg, err_it = [], [], []
for sc in test:
    gt = sc.count("circle")
    r1 = count_image(model, sc.image, PromptSpec(positive_text="circle"))
    r2 = count_image(model, sc.image, PromptSpec(positive_text="circle", negatives=(NegativePrompt("ellipse"),)))
    r3, _ = iterative_count(model, sc.image, PromptSpec(positive_text="circle"), n=3, max_iter=5)
    err_pos.append(abs(r1.count - gt)); err_neg.append(abs(r2.count - gt)); err_it.append(abs(r3.count - gt))
print(f"MAE text={np.mean(err_pos):.2f} +neg={np.mean(err_neg):.2f} iter={np.mean(err_it):.2f}")
# blank image behavior
blank = np.full((96, 96, 3), 0.3, dtype=np.float32)
rb = count_image(model, blank, PromptSpec(positive_text="circle"))
print("blank count:", rb.count)
