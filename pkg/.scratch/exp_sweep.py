import sys, time
import numpy as np
from countpp.config import ModelConfig, TrainConfig
from countpp.data import SceneConfig, make_scene
from countpp.pipelines import count_image, run_pass
from countpp.prompts import NegativePrompt, PromptSpec
from countpp.training import train

alpha, lr = float(sys.argv[1]), float(sys.argv[2])
seed, epochs, n_scenes, K = 0, 12, 240, 64
world = SceneConfig(size=(96, 96), counts={"circle": (2, 8), "ellipse": (2, 8)}, size_range=(10.0, 24.0))
scenes = [make_scene(seed * 100_000 + i, world) for i in range(n_scenes)]
test = [make_scene(9_000_000 + seed * 1000 + i, world) for i in range(12)]
tc = TrainConfig(
    model=ModelConfig(width=64, enhancer_blocks=2, decoder_blocks=2, num_queries=K, seed=seed, focal_alpha=alpha),
    epochs=epochs, lr=lr, batch_size=8, seed=seed, mosaic_per_base=0.2, val_every=100,
)
t0 = time.time()
res = train(tc, scenes)
model = res.model; model.eval()
err_pos, err_neg = [], []
for sc in test:
    gt = sc.count("circle")
    r1 = count_image(model, sc.image, PromptSpec(positive_text="circle"))
    r2 = count_image(model, sc.image, PromptSpec(positive_text="circle", negatives=(NegativePrompt("ellipse"),)))
    err_pos.append(abs(r1.count - gt)); err_neg.append(abs(r2.count - gt))
blank = np.full((96, 96, 3), 0.3, dtype=np.float32)
rb = count_image(model, blank, PromptSpec(positive_text="circle"))
arts = run_pass(model, test[0].image, PromptSpec(positive_text="circle"))
top = np.sort(arts.decision.scores)[::-1][:12]
print(f"alpha={alpha} lr={lr}: {time.time()-t0:.0f}s cls={res.log[-1].l_cls:.4f} giou={res.log[-1].l_giou:.3f} "
      f"MAE text={np.mean(err_pos):.1f} +neg={np.mean(err_neg):.1f} blank={rb.count} top_scores={np.round(top,2)}")
