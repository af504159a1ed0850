"""Streams world without ellipses; P5 pairs a trained or unseen positive with
the never-trained ellipse class, prompts anchored by in-image exemplars."""
import sys, time
import numpy as np
from countpp.config import ModelConfig, TrainConfig
from countpp.data import SceneConfig, SceneGenerationError, make_scene
from countpp.pipelines import count_image
from countpp.prompts import ExemplarRef, INPUT_IMAGE_REF, NegativePrompt, PromptSpec
from countpp.training import make_mosaic, train
from countpp.model import save_checkpoint

seed = int(sys.argv[1]) if len(sys.argv) > 1 else 0

def robust(cfg, s):
    while True:
        try: return make_scene(s, cfg)
        except SceneGenerationError: s += 7919

def stream_scene(i, salt=0):
    rng = np.random.default_rng(10_000_000 * seed + 31 * salt + i)
    if rng.random() < 0.55:
        counts = {"circle": (2, 5), "square": (2, 5)}
    else:
        counts = {"triangle": (2, 5), "square": (2, 5)}
    if rng.random() < 0.5:
        counts["ring"] = (1, 2)
    cfg = SceneConfig(size=(96, 96), counts=counts, size_range=(11.0, 24.0))
    return robust(cfg, int(rng.integers(2**31)))

scenes = [stream_scene(i) for i in range(250)]
rngm = np.random.default_rng(seed + 555)
mosaics = [make_mosaic([scenes[int(j)] for j in rngm.integers(0, len(scenes), 4)]) for _ in range(40)]
val = [stream_scene(i, salt=1) for i in range(16)]

tc = TrainConfig(
    model=ModelConfig(width=64, enhancer_blocks=2, decoder_blocks=2, num_queries=64, seed=seed),
    epochs=36, lr=3e-4, batch_size=8, seed=seed, mosaic_per_base=0.0, val_every=2,
    loss_lambda_cls=60.0, vocabulary=(), feedback_exemplars=0.3,
)
t0 = time.time()
res = train(tc, scenes + mosaics, val_scenes=val)
model = res.model; model.eval()
save_checkpoint(model, f"/root/pkg/.scratch/unseen_{seed}.npz")
print(f"trained {time.time()-t0:.0f}s")

def ex(sc, name, k=3):
    boxes = sorted(sc.boxes(name), key=lambda b: -b.w * b.h)[:k]
    return tuple(ExemplarRef(INPUT_IMAGE_REF, b) for b in boxes)

def arms(positive, negative, cfg, tag):
    ea, eb, raw = [], [], []
    for i in range(16):
        sc = robust(cfg, 9_300_000 + seed * 1000 + i)
        gt = sc.count(positive)
        specA = PromptSpec(positive_text=positive, positive_exemplars=ex(sc, positive))
        specB = PromptSpec(positive_text=positive, positive_exemplars=ex(sc, positive),
                           negatives=(NegativePrompt(negative, ex(sc, negative)),))
        a = count_image(model, sc.image, specA).count
        b = count_image(model, sc.image, specB).count
        ea.append(abs(a - gt)); eb.append(abs(b - gt)); raw.append((gt, sc.count(negative), a, b))
    print(f"{tag}: pos={np.mean(ea):.2f} neg={np.mean(eb):.2f} r={np.mean(eb)/max(np.mean(ea),1e-9):.2f}")
    print("   (gt, n_neg, A, B):", raw[:6])

cfg1 = SceneConfig(size=(112, 112), counts={"circle": (3, 6), "ellipse": (5, 9)},
                   size_range=(13.0, 22.0), aspect_ranges={"ellipse": (0.60, 0.80)}, max_retries=3000)
arms("circle", "ellipse", cfg1, "P5v1 trained-pos/unseen-neg")
cfg2 = SceneConfig(size=(112, 112), counts={"ellipse": (3, 6), "circle": (5, 9)},
                   size_range=(13.0, 22.0), aspect_ranges={"ellipse": (0.60, 0.80)}, max_retries=3000)
arms("ellipse", "circle", cfg2, "P5v2 unseen-pos/trained-neg")
