#!/usr/bin/env python3
"""Independent reference for the corpus analysis.

Reads the session files given on the command line and prints the expected
per-session metrics, resolution differences, symptom tallies and pooled
Fitts fit as JSON. Written from the metric definitions only; shares no code
with the C++ implementation.

    python3 analyze_oracle.py ../data/corpus/*.json > ../data/corpus_expected.json
"""

import json
import math
import sys

DISPERSION_PX = 60.0
MIN_FIXATION_MS = 200.0
MOUSE_EPS_PX = 1.0


def dispersion(window):
    xs = [s["x"] for s in window]
    ys = [s["y"] for s in window]
    return (max(xs) - min(xs)) + (max(ys) - min(ys))


def idt(samples):
    """Textbook I-DT: recomputes dispersion from scratch for every window."""
    fixations = []
    i = 0
    n = len(samples)
    while i < n:
        j = i
        while j < n and samples[j]["t_ms"] - samples[i]["t_ms"] < MIN_FIXATION_MS:
            j += 1
        if j >= n:
            break
        if dispersion(samples[i:j + 1]) > DISPERSION_PX:
            i += 1
            continue
        while j + 1 < n and dispersion(samples[i:j + 2]) <= DISPERSION_PX:
            j += 1
        w = samples[i:j + 1]
        fixations.append({
            "onset": w[0]["t_ms"],
            "end": w[-1]["t_ms"],
            "cx": sum(s["x"] for s in w) / len(w),
            "cy": sum(s["y"] for s in w) / len(w),
        })
        i = j + 1
    return fixations


def target_area(t):
    if t["shape"] == "circle":
        return math.pi * (t["width"] / 2) ** 2
    return t["width"] * t["height"]


def metrics(doc):
    W, H = doc["screen"]["width"], doc["screen"]["height"]
    trials = doc["trials"]
    gaze = [dict(g, x=min(max(g["x"], 0), W), y=min(max(g["y"], 0), H)) for g in doc["gaze"]]
    fx = idt(gaze)
    t0, t1 = trials[0]["appear_ms"], trials[-1]["select_ms"]
    anf = sum(1 for f in fx if t0 <= f["onset"] <= t1)
    td = (t1 - t0) / 1000.0

    steps = [math.dist((a["target"]["cx"], a["target"]["cy"]), (b["target"]["cx"], b["target"]["cy"]))
             for a, b in zip(trials, trials[1:])]
    d = sum(steps) / len(steps)
    aot = sum(target_area(t["target"]) for t in trials) / len(trials)
    w = sum(t["target"]["width"] for t in trials) / len(trials)
    aos = W * H
    espim = math.sqrt((aos / aot * math.log2(1 + d / w) * anf + 1) / (td + 1))

    ids = [math.log2(1 + s / b["target"]["width"]) if s > 0 else 0.0 for s, b in zip(steps, trials[1:])]

    def active(f):
        for t in trials:
            if t["appear_ms"] <= f["onset"] <= t["select_ms"]:
                return t
        for t in trials:
            if f["onset"] <= t["select_ms"] and f["end"] >= t["appear_ms"]:
                return t
        return None

    drifts = []
    for f in fx:
        t = active(f)
        if t is not None:
            drifts.append(math.dist((f["cx"], f["cy"]), (t["target"]["cx"], t["target"]["cy"])))

    mouse = doc["mouse"]
    moves = sum(1 for a, b in zip(mouse, mouse[1:]) if math.dist((a["x"], a["y"]), (b["x"], b["y"])) > MOUSE_EPS_PX)

    return {
        "session_id": doc["session_id"],
        "espim": espim,
        "anf": anf,
        "td_s": td,
        "errors": sum(t["error_clicks"] for t in trials),
        "mouse_moves": moves,
        "fqls_px": sum(drifts) / len(drifts),
        "mean_id_bits": sum(ids) / len(ids),
        "mean_mt_ms": sum(t["select_ms"] - t["appear_ms"] for t in trials) / len(trials),
        "click_drift_px": sum(math.dist((t["select_x"], t["select_y"]), (t["target"]["cx"], t["target"]["cy"]))
                              for t in trials) / len(trials),
        "fixation_count": len(fx),
        "resolution": f"{int(W)}x{int(H)}",
        "pixels": int(W) * int(H),
    }


def local_minutes(iso):
    hh, mm = int(iso[11:13]), int(iso[14:16])
    return hh * 60 + mm


def main(paths):
    docs = [json.load(open(p, encoding="utf-8")) for p in paths]
    sessions = [metrics(d) for d in docs]

    by_res = {}
    for s in sessions:
        by_res.setdefault((s["pixels"], s["resolution"]), []).append(s["espim"])
    prev = 0.0
    rows = []
    for (_, label), vals in sorted(by_res.items()):
        p = sum(vals) / len(vals)
        rows.append({"resolution": label, "espim": p, "diff": p - prev})
        prev = p

    tallies = {"nine_to_five": {}, "flexible": {}}
    for d in docs:
        m = local_minutes(d["started_at"])
        group = "nine_to_five" if 540 <= m < 1020 else "flexible"
        for tag in set(d["post"]["symptoms"]):
            tallies[group][tag] = tallies[group].get(tag, 0) + 1

    pts = []
    for d in docs:
        tr = d["trials"]
        for a, b in zip(tr, tr[1:]):
            s = math.dist((a["target"]["cx"], a["target"]["cy"]), (b["target"]["cx"], b["target"]["cy"]))
            if s > 0:
                pts.append((math.log2(1 + s / b["target"]["width"]), b["select_ms"] - b["appear_ms"]))
    mx = sum(p[0] for p in pts) / len(pts)
    my = sum(p[1] for p in pts) / len(pts)
    b = sum((x - mx) * (y - my) for x, y in pts) / sum((x - mx) ** 2 for x, _ in pts)
    a = my - b * mx
    sse = sum((y - a - b * x) ** 2 for x, y in pts)
    syy = sum((y - my) ** 2 for _, y in pts)

    out = {
        "sessions": sessions,
        "resolution_diff": {"rows": rows, "total": sum(r["diff"] for r in rows)},
        "symptoms": {g: {"counts": c, "total": sum(c.values())} for g, c in tallies.items()},
        "fitts": {"a_ms": a, "b_ms_per_bit": b, "r_squared": 1 - sse / syy, "n": len(pts)},
    }
    json.dump(out, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")


if __name__ == "__main__":
    main(sys.argv[1:])
