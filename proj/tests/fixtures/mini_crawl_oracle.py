"""Recomputes mini_crawl.expected.json from the hand tally with scipy/statsmodels.

Run from this directory: python3 mini_crawl_oracle.py > mini_crawl.expected.json
"""
import itertools
import json
import math

from scipy import stats
from statsmodels.stats.proportion import confint_proportions_2indep, proportions_ztest

tally = json.load(open("mini_crawl.tally.json"))
cols = tally["columns"]
rows = [dict(zip(cols, r)) for r in tally["rows"]]
for r in rows:
    n = r["n_requests"]
    r["proportion_hits"] = r["n_tracker_hits"] / n
    r["proportion_ad_hits"] = r["n_ad_hits"] / n
    r["proportion_any_hits"] = r["n_any_hits"] / n

countries = sorted({r["country"] for r in rows})


def col(key, country=None):
    return [r[key] for r in rows if country is None or r["country"] == country]


def mean_ranks(groups):
    pooled = [v for g in groups for v in g]
    ranks = stats.rankdata(pooled)
    out, i = [], 0
    for g in groups:
        out.append(sum(ranks[i:i + len(g)]) / len(g))
        i += len(g)
    return out


kw = {}
for metric in ["n_tp_request_domains", "n_tp_requests", "n_tp_cookies", "n_tracker_hits", "proportion_hits"]:
    groups = [col(metric, c) for c in countries]
    h, p = stats.kruskal(*groups)
    kw[metric] = {"H": h, "p": p, "mean_ranks": dict(zip(countries, mean_ranks(groups)))}

summary = {}
for c in countries:
    summary[c] = {}
    for key in ["n_requests", "n_tracker_hits", "proportion_hits"]:
        xs = col(key, c)
        m = sum(xs) / len(xs)
        sd = math.sqrt(sum((x - m) ** 2 for x in xs) / (len(xs) - 1))
        summary[c][key] = {"mean": m, "sd": sd}

pairwise = []
for a, b in itertools.combinations(countries, 2):
    xa, xb = col("proportion_hits", a), col("proportion_hits", b)
    res = stats.mannwhitneyu(xa, xb, use_continuity=False, alternative="two-sided", method="asymptotic")
    z = math.copysign(stats.norm.isf(res.pvalue / 2), res.statistic - len(xa) * len(xb) / 2)
    ma, mb = sum(xa) / len(xa), sum(xb) / len(xb)
    se = math.sqrt(stats.tvar(xa) / len(xa) + stats.tvar(xb) / len(xb))
    pairwise.append({"test": "mann_whitney", "a": a, "b": b, "Z": z, "p": res.pvalue,
                     "ci_low": ma - mb - 1.96 * se, "ci_high": ma - mb + 1.96 * se})
    ha, na = sum(col("n_tracker_hits", a)), sum(col("n_requests", a))
    hb, nb = sum(col("n_tracker_hits", b)), sum(col("n_requests", b))
    z2, p2 = proportions_ztest([ha, hb], [na, nb])
    lo, hi = confint_proportions_2indep(ha, na, hb, nb, method="wald", compare="diff", alpha=0.05)
    # statsmodels uses the exact normal quantile; rescale the half-width to 1.96.
    mid = ha / na - hb / nb
    q = stats.norm.isf(0.025)
    pairwise.append({"test": "two_proportion", "a": a, "b": b, "Z": z2, "p": p2,
                     "ci_low": mid - (mid - lo) * 1.96 / q, "ci_high": mid + (hi - mid) * 1.96 / q})

correlation = []
for c in countries:
    for x in ["n_tp_requests", "n_tp_request_domains"]:
        correlation.append({"country": c, "x": x, "kind": "pearson",
                            "r": stats.pearsonr(col(x, c), col("n_tp_cookies", c))[0]})
        correlation.append({"country": c, "x": x, "kind": "spearman",
                            "r": stats.spearmanr(col(x, c), col("n_tp_cookies", c))[0]})

th, ah, n = sum(col("n_tracker_hits")), sum(col("n_ad_hits")), sum(col("n_requests"))
z, p = proportions_ztest([th, ah], [n, n])
h, pk = stats.kruskal(col("proportion_ad_hits"), col("proportion_hits"))
anyp = col("proportion_any_hits")
m = sum(anyp) / len(anyp)
sd = math.sqrt(sum((x - m) ** 2 for x in anyp) / (len(anyp) - 1))
tracker_vs_ad = {"Z": z, "p": p, "kw_H": h, "kw_p": pk,
                 "hit_share": {"mean": m, "sd": sd, "se_mean": sd / math.sqrt(len(anyp)),
                               "ci_low": m - 1.96 * sd / math.sqrt(len(anyp)),
                               "ci_high": m + 1.96 * sd / math.sqrt(len(anyp))}}

print(json.dumps({"kruskal_wallis": kw, "summary": summary, "pairwise": pairwise, "correlation": correlation,
                  "tracker_vs_ad": tracker_vs_ad}, indent=1, sort_keys=True))
