import sys, time
import numpy as np
from countpp.config import ModelConfig, TrainConfig
from countpp.data import SceneConfig, make_scene
from countpp.pipelines import count_image, iterative_count, run_pass
from countpp.prompts import NegativePrompt, PromptSpec
from countpp.training import train
from countpp.model import save_checkpoint

epochs = int(sys.argv[1]); lr = float(sys.argv[2]); n_scenes = int(sys.argv[3])
seed, K = 0, 64
world = SceneConfig(size=(96, 96), counts={"circle": (2, 8), "ellipse": (2, 8)}, size_range=(10.0, 24.0))
scenes = [make_scene(seed * 100_000 + i, world) for i in range(n_scenes)]
test = [make_scene(9_000_000 + seed * 1000 + i, world) for i in range(20)]
tc = TrainConfig(
    model=ModelConfig(width=64, enhancer_blocks=2, decoder_blocks=2, num_queries=K, seed=seed),
    epochs=epochs, lr=lr, batch_size=8, seed=seed, mosaic_per_base=0.2, val_every=6,
)
t0 = time.time()
res = train(tc, scenes, val_scenes=test[:10],
            progress=lambda s: (print(f"  ep{s.epoch} cls={s.l_cls:.4f} giou={s.l_giou:.3f}"
                                      + (f" val={s.val_mae:.2f}" if s.val_mae is not None else ""), flush=True)
                                if s.epoch % 3 == 2 or s.val_mae is not None else None))
model = res.model; model.eval()
save_checkpoint(model, "/root/pkg/.scratch/pair_long.npz")
err = {"text": [], "neg": [], "iter": []}
for sc in test:
    gt = sc.count("circle")
    err["text"].append(abs(count_image(model, sc.image, PromptSpec(positive_text="circle")).count - gt))
    err["neg"].append(abs(count_image(model, sc.image, PromptSpec(positive_text="circle", negatives=(NegativePrompt("ellipse"),))).count - gt))
    r3, _ = iterative_count(model, sc.image, PromptSpec(positive_text="circle"), n=3, max_iter=5)
    err["iter"].append(abs(r3.count - gt))
blank = np.full((96, 96, 3), 0.3, dtype=np.float32)
rb = count_image(model, blank, PromptSpec(positive_text="circle"))
print(f"{time.time()-t0:.0f}s MAE text={np.mean(err['text']):.2f} +neg={np.mean(err['neg']):.2f} "
      f"iter={np.mean(err['iter']):.2f} blank={rb.count}")
