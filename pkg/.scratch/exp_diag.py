import sys, time
import numpy as np
from countpp.config import ModelConfig, TrainConfig
from countpp.data import SceneConfig, make_scene
from countpp.pipelines import run_pass
from countpp.prompts import NegativePrompt, PromptSpec
from countpp.training import train
from countpp.model import save_checkpoint
from countpp.geometry import pairwise_iou

seed, epochs, lr, n_scenes, K = 0, 18, 5e-4, 240, 64
world = SceneConfig(size=(96, 96), counts={"circle": (2, 8), "ellipse": (2, 8)}, size_range=(10.0, 24.0))
scenes = [make_scene(seed * 100_000 + i, world) for i in range(n_scenes)]
test = [make_scene(9_000_000 + seed * 1000 + i, world) for i in range(12)]

tc = TrainConfig(
    model=ModelConfig(width=64, enhancer_blocks=2, decoder_blocks=2, num_queries=K, seed=seed),
    epochs=epochs, lr=lr, batch_size=8, seed=seed, mosaic_per_base=0.2, val_every=100,
)
t0 = time.time()
res = train(tc, scenes)
print(f"train {time.time()-t0:.0f}s final cls={res.log[-1].l_cls:.4f} giou={res.log[-1].l_giou:.3f}")
model = res.model; model.eval()
save_checkpoint(model, "/root/pkg/.scratch/pair18.npz")

def classify_kept(sc, arts):
    """for each kept box: inside circle gt, ellipse gt, or background; duplicate?"""
    import numpy as np
    kept_boxes = np.stack([b.to_array() for b in arts.result.boxes]) if arts.result.boxes else np.zeros((0,4))
    circ = np.stack([b.to_array() for b in sc.boxes("circle")])
    ell = np.stack([b.to_array() for b in sc.boxes("ellipse")])
    stats = {"on_circle": 0, "on_ellipse": 0, "background": 0}
    used = set()
    dup = 0
    for i in range(kept_boxes.shape[0]):
        ic = pairwise_iou(kept_boxes[i][None], circ)[0]
        ie = pairwise_iou(kept_boxes[i][None], ell)[0]
        if ic.max() >= 0.3:
            j = int(np.argmax(ic))
            if ("c", j) in used: dup += 1
            used.add(("c", j)); stats["on_circle"] += 1
        elif ie.max() >= 0.3:
            j = int(np.argmax(ie))
            if ("e", j) in used: dup += 1
            used.add(("e", j)); stats["on_ellipse"] += 1
        else:
            stats["background"] += 1
    stats["duplicates"] = dup
    return stats

tot = {"on_circle":0,"on_ellipse":0,"background":0,"duplicates":0,"gt":0,"count":0}
for sc in test:
    arts = run_pass(model, sc.image, PromptSpec(positive_text="circle"))
    st = classify_kept(sc, arts)
    for k,v in st.items(): tot[k]+=v
    tot["gt"] += sc.count("circle"); tot["count"] += arts.result.count
    sims = arts.sim.pos.max(axis=1)
    import numpy as np
print("text-only kept composition:", tot)
# score distribution
arts = run_pass(model, test[0].image, PromptSpec(positive_text="circle"))
sc0 = np.sort(arts.decision.scores)[::-1]
print("sorted scores:", np.round(sc0[:40], 3))
print("gt circles:", test[0].count("circle"), "count:", arts.result.count)
