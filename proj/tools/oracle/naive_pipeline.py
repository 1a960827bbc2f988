#!/usr/bin/env python3
"""Naive reference pipeline.

Recomputes country degradation, firm risk scores and losses directly from
the published formulas, with no shared code with the engine. Used by the
test suite to cross-check every CDI, NRS and loss value.

Usage: naive_pipeline.py DATA_DIR CONFIG_FILE OUT_DIR
"""

import csv
import math
import os
import sys

REST_OF_WORLD = "REST_OF_WORLD"

HAZARD_KINDS = ["biodiversity", "land_degradation", "global_warming", "population", "natural_capital"]

SECTOR_GROUPS = [
    ("A01-03", 1, 3), ("B05-B09", 5, 9), ("C10-C12", 10, 12), ("C13-C18", 13, 18),
    ("C19", 19, 19), ("C20", 20, 20), ("C21-C22", 21, 22), ("C23", 23, 23),
    ("C24-C25", 24, 25), ("C26-C28", 26, 28), ("C29-C30", 29, 30), ("C31-33", 31, 33),
    ("D35", 35, 35), ("E36-E39", 36, 39), ("F41-F43", 41, 43), ("G45-G47", 45, 47),
    ("H49", 49, 49), ("H50", 50, 50), ("H51", 51, 51), ("H52-H53", 52, 53),
    ("I55-I56", 55, 56), ("J58-J63", 58, 63), ("K64-K66", 64, 66), ("L68", 68, 68),
    ("M69-M75", 69, 75), ("N77-N82", 77, 82), ("O84", 84, 84), ("P85", 85, 85),
    ("Q86-Q88", 86, 88), ("R90-R93", 90, 93), ("S94-S96", 94, 96),
]

RATING_SCORES = {"none": 0.0, "very_low": 0.2, "low": 0.4, "medium": 0.6, "high": 0.8, "very_high": 1.0}


def read_rows(path):
    with open(path, newline="") as f:
        return list(csv.DictReader(f))


def read_config(path):
    cfg = {
        "t0": 2022, "horizon": 2050, "temp_threshold": 3.0, "pop_growth_threshold": 0.5,
        "damage_steepness": 10.0, "damage_midpoint": 0.5, "pi_tipping": 0.289,
        "wacc": 0.0726, "growth_g": 0.0259, "cf_base": 5.0,
    }
    with open(path) as f:
        for line in f:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, _, val = line.partition("=")
            key = key.strip()
            val = val.strip()
            if key in ("t0", "horizon"):
                cfg[key] = int(val)
            else:
                cfg[key] = float(val)
    return cfg


def clamp(x, lo, hi):
    return lo if x < lo else hi if x > hi else x


def logistic_ratio(num, a):
    """num / (1 + e^a), guarding the overflow Python raises but IEEE absorbs."""
    try:
        return num / (1.0 + math.exp(a))
    except OverflowError:
        return 0.0


def fit_poly3(points):
    n = len(points)
    assert n >= 4
    sum_x = 0.0
    for (x, _) in points:
        sum_x += x
    offset = sum_x / float(n)
    spread = 0.0
    for (x, _) in points:
        spread = max(spread, abs(x - offset))
    scale = max(spread, 1.0)

    m = [0.0] * 7
    b = [0.0] * 4
    for (x, y) in points:
        xh = (x - offset) / scale
        pw = 1.0
        for k in range(7):
            m[k] += pw
            if k < 4:
                b[k] += pw * y
            pw *= xh

    a = [[m[j + k] for k in range(4)] for j in range(4)]
    # gaussian elimination, partial pivoting
    for col in range(4):
        piv = col
        for r in range(col + 1, 4):
            if abs(a[r][col]) > abs(a[piv][col]):
                piv = r
        if piv != col:
            a[piv], a[col] = a[col], a[piv]
            b[piv], b[col] = b[col], b[piv]
        for r in range(col + 1, 4):
            f = a[r][col] / a[col][col]
            for c in range(col, 4):
                a[r][c] -= f * a[col][c]
            b[r] -= f * b[col]
    for i in range(3, -1, -1):
        s = b[i]
        for c in range(i + 1, 4):
            s -= a[i][c] * b[c]
        b[i] = s / a[i][i]

    def eval_at(year):
        xh = (year - offset) / scale
        return ((b[3] * xh + b[2]) * xh + b[1]) * xh + b[0]

    return eval_at


def fit_linear(points):
    n = len(points)
    sum_x = sum_y = 0.0
    for (x, y) in points:
        sum_x += x
        sum_y += y
    xbar = sum_x / float(n)
    ybar = sum_y / float(n)
    sxx = sxy = 0.0
    for (x, y) in points:
        dx = x - xbar
        sxx += dx * dx
        sxy += dx * (y - ybar)
    slope = sxy / sxx

    def eval_at(year):
        return ybar + slope * (year - xbar)

    return slope, eval_at


def yoy(points):
    out = []
    for i in range(1, len(points)):
        if points[i][0] == points[i - 1][0] + 1:
            out.append((points[i][0], points[i][1] - points[i - 1][1]))
    return out


def project_series(kind, points, cfg):
    """Returns (is_pressure, [value per year t0+1..horizon])."""
    years = list(range(cfg["t0"] + 1, cfg["horizon"] + 1))
    if kind in ("global_warming", "population"):
        by_year = dict(points)
        v0 = by_year[cfg["t0"]]
        vT = by_year[cfg["horizon"]]
        if kind == "global_warming":
            thr = cfg["temp_threshold"]
        else:
            thr = v0 * (1.0 + cfg["pop_growth_threshold"])
        span = thr - v0
        vals = []
        for year in years:
            frac = float(year - cfg["t0"]) / float(cfg["horizon"] - cfg["t0"])
            v = v0 + (vT - v0) * frac
            vals.append(clamp((v - v0) / span, 0.0, 1.0))
        return True, vals
    if kind == "biodiversity":
        ev = fit_poly3(yoy(points))
        return False, [clamp(-(ev(y) / 1.0), -1.0, 1.0) for y in years]
    if kind == "land_degradation":
        slope, _ = fit_linear(points)
        lam = clamp(slope / 100.0, -1.0, 1.0)
        return False, [lam for _ in years]
    if kind == "natural_capital":
        _, ev = fit_linear(yoy(points))
        return False, [clamp(-(ev(y) / 100.0), -1.0, 1.0) for y in years]
    raise ValueError(kind)


def main():
    data_dir, config_file, out_dir = sys.argv[1], sys.argv[2], sys.argv[3]
    cfg = read_config(config_file)
    os.makedirs(out_dir, exist_ok=True)

    countries = sorted(read_rows(os.path.join(data_dir, "countries.csv")), key=lambda r: r["iso3"])
    for c in countries:
        c["land_area_km2"] = float(c["land_area_km2"])
        c["gdp_usd"] = float(c["gdp_usd"])
    firms = sorted(read_rows(os.path.join(data_dir, "firms.csv")), key=lambda r: r["firm_id"])
    revenues = sorted(read_rows(os.path.join(data_dir, "revenues.csv")),
                      key=lambda r: (r["firm_id"], r["region_code"]))
    deps = read_rows(os.path.join(data_dir, "encore_dependencies.csv"))
    crosswalk = read_rows(os.path.join(data_dir, "nace_crosswalk.csv"))
    aggregates = {}
    agg_path = os.path.join(data_dir, "region_aggregates.csv")
    if os.path.exists(agg_path):
        for r in read_rows(agg_path):
            aggregates.setdefault(r["aggregate_code"], []).append(r["iso3"])
        for code in aggregates:
            aggregates[code] = sorted(set(aggregates[code]))

    hazard_rows = read_rows(os.path.join(data_dir, "hazards.csv"))
    series = {}
    for r in hazard_rows:
        key = (r["hazard_kind"], r["region_scope"], r["region_code"])
        series.setdefault(key, []).append((int(r["year"]), float(r["value"])))
    for key in series:
        series[key].sort()

    projected = {key: project_series(key[0], pts, cfg) for key, pts in series.items()}

    def direct_lookup(kind, c):
        for probe in (("country", c["iso3"]), ("subregion", c["m49_subregion"]),
                      ("subregion", c["iucn_region"]), ("continent", c["continent"])):
            key = (kind, probe[0], probe[1])
            if key in projected:
                return projected[key]
        for (k, scope, _code), path in projected.items():
            if k == kind and scope == "global":
                return path
        return None

    n_years = cfg["horizon"] - cfg["t0"]
    years = list(range(cfg["t0"] + 1, cfg["horizon"] + 1))

    # per-country resolved hazard paths, in hazard-kind order
    resolved = {}
    for c in countries:
        paths = []
        for kind in HAZARD_KINDS:
            hit = direct_lookup(kind, c)
            if hit is not None:
                paths.append(hit)
                continue
            acc = [0.0] * n_years
            land = 0.0
            pressure = False
            for peer in countries:
                if peer["iso3"] == c["iso3"] or peer["continent"] != c["continent"]:
                    continue
                p = direct_lookup(kind, peer)
                if p is None:
                    continue
                for t in range(n_years):
                    acc[t] += peer["land_area_km2"] * p[1][t]
                land += peer["land_area_km2"]
                pressure = p[0]
            if land > 0:
                paths.append((pressure, [v / land for v in acc]))
        resolved[c["iso3"]] = paths

    # degradation series per country
    degradation = {}
    for c in countries:
        paths = resolved[c["iso3"]]
        sum_d = [0.0] * n_years
        for (is_pressure, vals) in paths:
            run = 0.0
            for t in range(n_years):
                if is_pressure:
                    ep = vals[t]
                else:
                    run += vals[t]
                    ep = 1.0 - math.exp(-run)
                d = ep + logistic_ratio(1.0 - ep, -cfg["damage_steepness"] * (ep - cfg["damage_midpoint"]))
                sum_d[t] += d
        inv_n = 1.0 / float(len(paths))
        rows = []
        for t in range(n_years):
            dbar = clamp(sum_d[t] * inv_n, 0.0, 1.0)
            p = logistic_ratio(1.0 - dbar, -10.0 * (dbar - 0.5))
            dtp = (1.0 - dbar) * cfg["pi_tipping"]
            cdi = min(1.0, dbar + p * dtp)
            rows.append((dbar, p, dtp, cdi))
        degradation[c["iso3"]] = rows

    # world land-weighted aggregate
    world = [0.0] * n_years
    total_land = 0.0
    for c in countries:
        for t in range(n_years):
            world[t] += c["land_area_km2"] * degradation[c["iso3"]][t][3]
        total_land += c["land_area_km2"]
    world = [v / total_land for v in world]

    def cdi_series_for(code):
        if code == REST_OF_WORLD:
            return world
        return [r[3] for r in degradation[code]]

    with open(os.path.join(out_dir, "cdi.csv"), "w") as f:
        f.write("iso3,year,mean_damage,tipping_prob,tipping_damage,cdi\n")
        for c in countries:
            for t, (dbar, p, dtp, cdi) in enumerate(degradation[c["iso3"]]):
                f.write("%s,%d,%r,%r,%r,%r\n" % (c["iso3"], years[t], dbar, p, dtp, cdi))

    # vulnerability per distinct firm NACE
    def vulnerability(nace):
        processes = sorted({x["production_process"] for x in crosswalk if x["nace4"] == nace})
        total = 0.0
        for proc in processes:
            best = -1.0
            for d in deps:
                if d["production_process"] != proc:
                    continue
                best = max(best, RATING_SCORES[d["materiality_rating"].lower()])
            total += best
        return total / float(len(processes)), len(processes)

    vs_by_nace = {}
    for firm in firms:
        if firm["nace4"] not in vs_by_nace:
            vs_by_nace[firm["nace4"]] = vulnerability(firm["nace4"])

    with open(os.path.join(out_dir, "vs.csv"), "w") as f:
        f.write("nace4,score,n_processes\n")
        for nace in sorted(vs_by_nace):
            score, n = vs_by_nace[nace]
            f.write("%s,%r,%d\n" % (nace, score, n))

    # exposures
    gdp = {c["iso3"]: c["gdp_usd"] for c in countries}
    exposures = {}
    for firm in firms:
        fid = firm["firm_id"]
        rows = [r for r in revenues if r["firm_id"] == fid]
        amounts = {}
        total = 0.0
        for r in rows:
            amount = float(r["revenue"])
            total += amount
            code = r["region_code"]
            if code == REST_OF_WORLD or code in gdp:
                amounts[code] = amounts.get(code, 0.0) + amount
            else:
                members = aggregates[code]
                agg_gdp = 0.0
                for iso in members:
                    agg_gdp += gdp[iso]
                for iso in members:
                    amounts[iso] = amounts.get(iso, 0.0) + amount * (gdp[iso] / agg_gdp)
        exposures[fid] = {code: amounts[code] / total for code in sorted(amounts)}

    with open(os.path.join(out_dir, "exposures.csv"), "w") as f:
        f.write("firm_id,iso3,share\n")
        for fid in sorted(exposures):
            for code, share in exposures[fid].items():
                f.write("%s,%s,%r\n" % (fid, code, share))

    # NRS series
    nrs = {}
    for firm in firms:
        fid = firm["firm_id"]
        acc = [0.0] * n_years
        for code in sorted(exposures[fid]):
            share = exposures[fid][code]
            cdis = cdi_series_for(code)
            for t in range(n_years):
                acc[t] += share * cdis[t]
        vs = vs_by_nace[firm["nace4"]][0]
        nrs[fid] = [v * vs for v in acc]

    with open(os.path.join(out_dir, "nrs.csv"), "w") as f:
        f.write("firm_id,year,nrs\n")
        for fid in sorted(nrs):
            for t in range(n_years):
                f.write("%s,%d,%r\n" % (fid, years[t], nrs[fid][t]))

    # sector multipliers
    def sector_group(nace):
        division = int(nace[:2])
        for code, lo, hi in SECTOR_GROUPS:
            if lo <= division <= hi:
                return code
        raise ValueError(nace)

    groups = {}
    for firm in firms:
        groups.setdefault(sector_group(firm["nace4"]), []).append(firm)

    mult = {}
    for code in groups:
        members = groups[code]
        mean_sigma = mean_lev = 0.0
        for m in members:
            mean_sigma += float(m["volatility_ann"])
            mean_lev += float(m["leverage_debt_to_assets"])
        mean_sigma /= float(len(members))
        mean_lev /= float(len(members))
        for m in members:
            if len(members) < 2 or mean_sigma == 0.0:
                sm = 1.0
            else:
                sm = float(m["volatility_ann"]) / mean_sigma
            if len(members) < 2 or mean_lev == 0.0:
                lm = 1.0
            else:
                lm = float(m["leverage_debt_to_assets"]) / mean_lev
            mult[m["firm_id"]] = (sm, lm)

    # DCF
    def dcf_value(nrs_series):
        pow_g = pow_w = 1.0
        running = 0.0
        for t in range(1, n_years):
            pow_g *= 1.0 + cfg["growth_g"]
            pow_w *= 1.0 + cfg["wacc"]
            cf = cfg["cf_base"] * pow_g
            running += cf * (1.0 - nrs_series[t - 1]) / pow_w
        pow_g *= 1.0 + cfg["growth_g"]
        pow_w *= 1.0 + cfg["wacc"]
        cf = cfg["cf_base"] * pow_g
        terminal = cf * (1.0 + cfg["growth_g"]) * (1.0 - nrs_series[n_years - 1]) / \
            ((cfg["wacc"] - cfg["growth_g"]) * pow_w)
        return running + terminal

    v0 = dcf_value([0.0] * n_years)

    losses = {}
    for firm in firms:
        fid = firm["firm_id"]
        sm_mult, lev_mult = mult[fid]
        nrs_T = nrs[fid][n_years - 1]
        loss_sm = max(-1.0, -nrs_T * sm_mult * lev_mult)
        v = dcf_value(nrs[fid])
        loss_dcf = max(-1.0, ((v - v0) / v0) * lev_mult)
        losses[fid] = (sector_group(firm["nace4"]), nrs_T, sm_mult, lev_mult, loss_sm, loss_dcf,
                       (loss_sm + loss_dcf) / 2.0)

    with open(os.path.join(out_dir, "losses.csv"), "w") as f:
        f.write("firm_id,sector_group,nrs,sigma_mult,lev_mult,loss_sm,loss_dcf,loss_combined\n")
        for fid in sorted(losses):
            g, nrs_T, sm, lm, lsm, ldcf, lc = losses[fid]
            f.write("%s,%s,%r,%r,%r,%r,%r,%r\n" % (fid, g, nrs_T, sm, lm, lsm, ldcf, lc))

    with open(os.path.join(out_dir, "sector_losses.csv"), "w") as f:
        f.write("sector_group,mean_loss\n")
        for code, lo, hi in SECTOR_GROUPS:
            members = [fid for fid in sorted(losses) if losses[fid][0] == code]
            if not members:
                continue
            total = 0.0
            for fid in members:
                total += losses[fid][6]
            f.write("%s,%r\n" % (code, total / float(len(members))))

    print("oracle outputs written to", out_dir)


if __name__ == "__main__":
    main()
