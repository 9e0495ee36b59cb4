#include "nutm/pcr.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace nutm {

void Pool::canonicalize() {
    std::sort(strands.begin(), strands.end());
    strands.erase(std::unique(strands.begin(), strands.end()), strands.end());
}

namespace {

// One admissible core placement on a frame string. v is the base just past
// the 3' terminus, which is all the extension step needs.
struct Hit {
    std::size_t u = 0, v = 0;
    std::size_t mismatches = 0;
    LoopSide loop = LoopSide::None;
    std::size_t loop_len = 0;
    std::size_t loop_at = 0;  // core offset of a primer bulge, frame offset of a template bulge
};

std::size_t diff_count(const std::string& a, std::size_t ai, const std::string& b,
                       std::size_t bi, std::size_t n) {
    std::size_t mm = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (a[ai + i] != b[bi + i]) ++mm;
    return mm;
}

bool hit_better(const Hit& a, const Hit& b) {
    if (a.mismatches != b.mismatches) return a.mismatches < b.mismatches;
    if (a.loop != b.loop) return static_cast<int>(a.loop) < static_cast<int>(b.loop);
    if (a.loop_len != b.loop_len) return a.loop_len < b.loop_len;
    return a.loop_at < b.loop_at;
}

// Free energy of a gapped pairing given as matched segments (probe, site).
double paired_dg(const std::vector<std::pair<std::string, std::string>>& segs,
                 std::size_t loop_len, const NnTable& t) {
    double dg = loop_len * t.loop_per_base;
    bool first_done = false;
    char last_site = 0;
    bool last_match = false;
    for (std::size_t si = 0; si < segs.size(); ++si) {
        const auto& [p, q] = segs[si];
        for (std::size_t i = 0; i < p.size(); ++i) {
            bool match = p[i] == q[i];
            if (!match) dg += t.mismatch_penalty;
            if (!first_done && match) {
                dg += (q[i] == 'G' || q[i] == 'C') ? t.init_gc : t.init_at;
                first_done = true;
            }
            if (i > 0 && match && last_match) dg += t.stack(q.substr(i - 1, 2));
            last_site = q[i];
            last_match = match;
        }
    }
    if (last_match) dg += (last_site == 'G' || last_site == 'C') ? t.init_gc : t.init_at;
    return dg;
}

std::vector<std::pair<std::string, std::string>> hit_segments(const Hit& h,
                                                              const std::string& core,
                                                              const std::string& frame) {
    std::size_t c = core.size();
    switch (h.loop) {
        case LoopSide::None:
            return {{core, frame.substr(h.u, h.v - h.u)}};
        case LoopSide::Primer: {
            std::size_t p = h.loop_at, j = h.loop_len;
            return {{core.substr(0, p), frame.substr(h.u, p)},
                    {core.substr(p + j), frame.substr(h.u + p, c - p - j)}};
        }
        case LoopSide::Template: {
            std::size_t q = h.loop_at, j = h.loop_len;  // q: core bases paired before the bulge
            return {{core.substr(0, q), frame.substr(h.u, q)},
                    {core.substr(q), frame.substr(h.u + q + j, c - q)}};
        }
    }
    return {};
}

// All placements of core on frame under the policy, one best hit per 3' end.
std::vector<Hit> match_core(const std::string& core, const std::string& frame,
                            const BindingPolicy& pol) {
    std::vector<Hit> out;
    std::size_t c = core.size();
    if (c == 0 || frame.size() < c) return out;
    std::size_t m = std::min(pol.anchor, c);
    if (m == 0) m = c;  // an anchorless policy degenerates to exact cores
    std::size_t rest = c - m;
    for (std::size_t v = m; v <= frame.size(); ++v) {
        if (frame.compare(v - m, m, core, c - m, m) != 0) continue;
        std::optional<Hit> best;
        auto offer = [&](Hit h) {
            if (h.mismatches > pol.mismatch_budget) return;
            if (pol.dg_ceiling &&
                paired_dg(hit_segments(h, core, frame), h.loop_len, NnTable::unified()) >
                    *pol.dg_ceiling)
                return;
            if (!best || hit_better(h, *best)) best = h;
        };
        if (v >= c)
            offer({v - c, v, diff_count(core, 0, frame, v - c, rest), LoopSide::None, 0, 0});
        for (std::size_t j = 1; j <= pol.loop_max && j + 1 <= rest; ++j) {
            // primer bulge: j core bases flipped out, paired bases on both sides
            std::size_t aligned = rest - j;
            if (v < m + aligned) continue;
            std::size_t u = v - m - aligned;
            for (std::size_t p = 1; p + j <= rest; ++p) {
                std::size_t mm = diff_count(core, 0, frame, u, p) +
                                 diff_count(core, p + j, frame, u + p, rest - j - p);
                offer({u, v, mm, LoopSide::Primer, j, p});
            }
        }
        for (std::size_t j = 1; j <= pol.loop_max && rest >= 2; ++j) {
            // template bulge: j frame bases skipped between paired runs
            if (v < m + rest + j) continue;
            std::size_t u = v - m - rest - j;
            for (std::size_t q = 1; q + 1 <= rest; ++q) {
                std::size_t mm = diff_count(core, 0, frame, u, q) +
                                 diff_count(core, q, frame, u + q + j, rest - q);
                offer({u, v, mm, LoopSide::Template, j, q});
            }
        }
        if (best) out.push_back(*best);
    }
    return out;
}

std::vector<std::string> frames_for_sym(const Strand& s) {
    std::string rc = revcomp(s.seq);
    if (rc == s.seq) return {s.seq};
    return {s.seq, rc};
}

std::vector<std::string> frames_for_asym(const Strand& s) {
    std::string rc = revcomp(s.seq);
    if (s.form == Strandedness::Single) return {rc};
    if (rc == s.seq) return {s.seq};
    return {s.seq, rc};
}

} // namespace

std::vector<BindingSite> find_binding_sites(const Primer& p, const Pool& pool,
                                            const BindingPolicy& policy) {
    std::vector<BindingSite> sites;
    std::string core = p.core();
    for (std::size_t i = 0; i < pool.strands.size(); ++i) {
        const Strand& st = pool.strands[i];
        std::size_t n = st.seq.size();
        if (st.form == Strandedness::Double)
            for (const Hit& h : match_core(core, st.seq, policy))
                sites.push_back({i, Direction::Forward, h.u, h.v, h.mismatches, h.loop, h.loop_len});
        for (const Hit& h : match_core(core, revcomp(st.seq), policy))
            sites.push_back({i, Direction::Reverse, n - h.v, n - h.u, h.mismatches, h.loop,
                             h.loop_len});
    }
    std::sort(sites.begin(), sites.end(), [](const BindingSite& a, const BindingSite& b) {
        if (a.strand_index != b.strand_index) return a.strand_index < b.strand_index;
        if (a.orientation != b.orientation) return a.orientation == Direction::Forward;
        if (a.begin != b.begin) return a.begin < b.begin;
        return a.end < b.end;
    });
    return sites;
}

Pool symmetric_pcr(const Pool& templates, const Primer& fwd, const Primer& rev,
                   const BindingPolicy& policy) {
    Pool out;
    std::string fcore = fwd.core(), rcore = rev.core();
    for (const Strand& st : templates.strands) {
        for (const std::string& F : frames_for_sym(st)) {
            auto fhits = match_core(fcore, F, policy);
            auto rhits = match_core(rcore, revcomp(F), policy);
            for (const Hit& fh : fhits)
                for (const Hit& rh : rhits) {
                    std::size_t a = F.size() - rh.v;
                    if (fh.v > a) continue;
                    out.add({fwd.seq + F.substr(fh.v, a - fh.v) + revcomp(rev.seq),
                             Strandedness::Double});
                }
        }
    }
    out.canonicalize();
    return out;
}

Pool asymmetric_pcr(const Pool& templates, const Primer& p, const BindingPolicy& policy) {
    Pool out;
    std::string core = p.core();
    for (const Strand& st : templates.strands)
        for (const std::string& F : frames_for_asym(st))
            for (const Hit& h : match_core(core, F, policy))
                out.add({p.seq + F.substr(h.v), Strandedness::Single});
    out.canonicalize();
    return out;
}

void Microprogram::validate() const {
    std::set<std::string> seen;
    for (const PcrOp& op : ops) {
        if (op.label.empty()) throw Error("microprogram: unlabeled op");
        auto ref_ok = [&](const std::string& r) { return r.empty() || seen.count(r); };
        if (!ref_ok(op.template_step))
            throw Error("microprogram: op '" + op.label + "' reads unknown step '" +
                        op.template_step + "'");
        if (!ref_ok(op.fwd.from_step) || !ref_ok(op.rev.from_step))
            throw Error("microprogram: op '" + op.label + "' references a later or missing step");
        if (op.fwd.from_step.empty() && op.fwd.primer.seq.empty())
            throw Error("microprogram: op '" + op.label + "' has no forward primer");
        if (op.kind == PcrOp::Kind::Symmetric && op.rev.from_step.empty() &&
            op.rev.primer.seq.empty())
            throw Error("microprogram: op '" + op.label + "' has no reverse primer");
        if (!seen.insert(op.label).second)
            throw Error("microprogram: duplicate label '" + op.label + "'");
    }
    if (ops.empty()) throw Error("microprogram: no ops");
}

namespace {

// Informational mismatch count for a declared context: positional diff with
// one contiguous loop after the longest common prefix when lengths differ.
void designed_alignment(const std::string& core, const std::string& target, std::size_t& mm,
                        LoopSide& side, std::size_t& loop_len) {
    if (core.size() == target.size()) {
        mm = diff_count(core, 0, target, 0, core.size());
        side = LoopSide::None;
        loop_len = 0;
        return;
    }
    const std::string& longer = core.size() > target.size() ? core : target;
    const std::string& shorter = core.size() > target.size() ? target : core;
    std::size_t d = longer.size() - shorter.size();
    std::size_t lcp = 0;
    while (lcp < shorter.size() && longer[lcp] == shorter[lcp]) ++lcp;
    mm = diff_count(longer, lcp + d, shorter, lcp, shorter.size() - lcp);
    side = core.size() > target.size() ? LoopSide::Primer : LoopSide::Template;
    loop_len = d;
}

struct FwdSite {
    std::size_t v;  // extension start, frame coordinates
    BindingSite rep;
};
struct RevSite {
    std::size_t a;  // paired interval start, frame coordinates
    BindingSite rep;
};

BindingSite to_stored(std::size_t strand_index, bool frame_is_sense, bool primer_is_rev,
                      std::size_t n, std::size_t fb, std::size_t fe, std::size_t mm,
                      LoopSide loop, std::size_t loop_len) {
    BindingSite s;
    s.strand_index = strand_index;
    bool anneals_stored = frame_is_sense == primer_is_rev;
    s.orientation = anneals_stored ? Direction::Reverse : Direction::Forward;
    if (frame_is_sense) {
        s.begin = fb;
        s.end = fe;
    } else {
        s.begin = n - fe;
        s.end = n - fb;
    }
    s.mismatches = mm;
    s.loop = loop;
    s.loop_len = loop_len;
    return s;
}

std::vector<FwdSite> fwd_sites_on_frame(const OpPrimer& spec, const Primer& inst,
                                        const std::string& F, const BindingPolicy& pol,
                                        std::size_t strand_index, bool frame_is_sense,
                                        std::size_t n) {
    std::vector<FwdSite> out;
    if (spec.context) {
        const std::string& K = *spec.context;
        std::size_t mm, ll;
        LoopSide side;
        designed_alignment(inst.core(), K.substr(spec.context_offset), mm, side, ll);
        for (std::size_t q = F.find(K); q != std::string::npos; q = F.find(K, q + 1))
            out.push_back({q + K.size(),
                           to_stored(strand_index, frame_is_sense, false, n,
                                     q + spec.context_offset, q + K.size(), mm, side, ll)});
        return out;
    }
    for (const Hit& h : match_core(inst.core(), F, pol))
        out.push_back({h.v, to_stored(strand_index, frame_is_sense, false, n, h.u, h.v,
                                      h.mismatches, h.loop, h.loop_len)});
    return out;
}

std::vector<RevSite> rev_sites_on_frame(const OpPrimer& spec, const Primer& inst,
                                        const std::string& F, const BindingPolicy& pol,
                                        std::size_t strand_index, bool frame_is_sense,
                                        std::size_t n) {
    std::vector<RevSite> out;
    if (spec.context) {
        const std::string& K = *spec.context;
        std::string sense = revcomp(inst.seq);  // how the primer reads on this frame
        std::size_t mm, ll;
        LoopSide side;
        designed_alignment(sense, K.substr(spec.context_offset), mm, side, ll);
        for (std::size_t q = F.find(K); q != std::string::npos; q = F.find(K, q + 1)) {
            if (spec.reverse_molecule &&
                F.compare(q + K.size(), std::string::npos, sense, spec.ref_split,
                          std::string::npos) != 0)
                continue;  // the product must restate the template past the window
            out.push_back({q + spec.context_offset,
                           to_stored(strand_index, frame_is_sense, true, n,
                                     q + spec.context_offset, q + K.size(), mm, side, ll)});
        }
        return out;
    }
    for (const Hit& h : match_core(inst.core(), revcomp(F), pol))
        out.push_back({F.size() - h.v,
                       to_stored(strand_index, !frame_is_sense, false, n, h.u, h.v, h.mismatches,
                                 h.loop, h.loop_len)});
    return out;
}

std::vector<Primer> primer_instances(const OpPrimer& spec,
                                     const std::map<std::string, Pool>& pools) {
    if (spec.from_step.empty()) return {spec.primer};
    std::vector<Primer> out;
    for (const Strand& st : pools.at(spec.from_step).strands)
        out.push_back({spec.reverse_molecule ? revcomp(st.seq) : st.seq, PrimerRole::Megaprimer,
                       spec.primer.tail_len});
    return out;
}

} // namespace

MicroprogramResult run_microprogram(const Microprogram& mp, const Pool& initial) {
    mp.validate();
    MicroprogramResult res;
    std::map<std::string, Pool> pools;
    for (const PcrOp& op : mp.ops) {
        const Pool& tpool = op.template_step.empty() ? initial : pools.at(op.template_step);
        BindingPolicy pol = op.policy.value_or(BindingPolicy{});
        StepTrace tr;
        tr.label = op.label;
        Pool products;
        auto fwd_list = primer_instances(op.fwd, pools);
        for (std::size_t ti = 0; ti < tpool.strands.size(); ++ti) {
            const Strand& st = tpool.strands[ti];
            std::size_t n = st.seq.size();
            if (op.kind == PcrOp::Kind::Asymmetric) {
                for (const Primer& fp : fwd_list)
                    for (const std::string& F : frames_for_asym(st)) {
                        bool sense = F == st.seq;
                        for (const FwdSite& fs :
                             fwd_sites_on_frame(op.fwd, fp, F, pol, ti, sense, n)) {
                            tr.fwd_sites.push_back(fs.rep);
                            products.add({fp.seq + F.substr(fs.v), Strandedness::Single});
                        }
                    }
                continue;
            }
            auto rev_list = primer_instances(op.rev, pools);
            for (const std::string& F : frames_for_sym(st)) {
                bool sense = F == st.seq;
                for (const Primer& fp : fwd_list) {
                    auto fss = fwd_sites_on_frame(op.fwd, fp, F, pol, ti, sense, n);
                    if (fss.empty()) continue;
                    for (const Primer& rp : rev_list) {
                        auto rss = rev_sites_on_frame(op.rev, rp, F, pol, ti, sense, n);
                        for (const FwdSite& fs : fss) {
                            bool fwd_recorded = false;
                            for (const RevSite& rs : rss) {
                                if (fs.v > rs.a) continue;
                                if (!fwd_recorded) tr.fwd_sites.push_back(fs.rep);
                                fwd_recorded = true;
                                tr.rev_sites.push_back(rs.rep);
                                products.add({fp.seq + F.substr(fs.v, rs.a - fs.v) +
                                                  revcomp(rp.seq),
                                              Strandedness::Double});
                            }
                        }
                    }
                }
            }
        }
        products.canonicalize();
        if (products.empty())
            throw StepFailure(op.label, "microprogram step '" + op.label + "' yielded nothing");
        pools[op.label] = products;
        tr.products = products;
        res.steps.push_back(std::move(tr));
    }
    res.products = pools.at(mp.ops.back().label);
    return res;
}

std::vector<std::pair<std::string, std::string>> alignment_table(const Microprogram& mp,
                                                                 const MicroprogramResult& r) {
    std::vector<std::pair<std::string, std::string>> rows;
    for (std::size_t i = 0; i < mp.ops.size() && i < r.steps.size(); ++i) {
        const PcrOp& op = mp.ops[i];
        if (!op.window_begin || op.window_columns.empty() || r.steps[i].products.empty())
            continue;
        const std::string& seq = r.steps[i].products.strands.front().seq;
        if (*op.window_begin + op.window_len > seq.size()) continue;
        std::string win = seq.substr(*op.window_begin, op.window_len);
        std::size_t cell = op.window_len / op.window_columns.size();
        std::vector<std::string> cols(mp.table_width, std::string(cell, '-'));
        for (std::size_t ci = 0; ci < op.window_columns.size(); ++ci)
            cols[op.window_columns[ci]] = win.substr(ci * cell, cell);
        std::string row;
        for (std::size_t ci = 0; ci < cols.size(); ++ci) {
            if (ci) row += ' ';
            row += cols[ci];
        }
        rows.emplace_back(op.label, row);
    }
    return rows;
}

Primer start_primer(const CodeBook& cb) { return {cb.start(), PrimerRole::Start, 0}; }

Primer end_primer(const CodeBook& cb) { return {revcomp(cb.end()), PrimerRole::End, 0}; }

namespace {

struct Cell {
    int id;
    std::string text;
};

std::string text_of(const std::vector<Cell>& w) {
    std::string out;
    for (const Cell& c : w) out += c.text;
    return out;
}

} // namespace

Microprogram compile_rule(const ThueRule& rule, Direction dir, const CodeBook& cb) {
    if (dir == Direction::Reverse && rule.mode == RuleMode::Directed)
        throw Error("compile: rule " + std::to_string(rule.id) + " is one way");
    const std::vector<Symbol>& A = rule.pattern(dir);
    const std::vector<Symbol>& B = rule.replacement(dir);
    if (A.empty() || B.empty()) throw Error("compile: empty rule side");
    const std::string s = cb.spacer(), sp = cb.alt_spacer(), clamp = cb.clamp();
    const std::string x = cb.intermediate("x"), z = cb.intermediate("z");
    const std::size_t wl = cb.word_len();
    const bool cells_ok = s.size() == wl && sp.size() == wl;
    const std::string W_A = cb.encode_region(A);
    const std::string W_B = cb.encode_region(B);
    const std::size_t k = A.size(), m = B.size();
    const BindingPolicy exact{6, 0, 0, std::nullopt};
    const Primer EP = end_primer(cb);

    int next_id = 0;
    auto mkcell = [&](std::string t) { return Cell{next_id++, std::move(t)}; };
    std::vector<Cell> w;
    w.push_back(mkcell(sp));
    for (std::size_t i = 0; i < k; ++i) {
        w.push_back(mkcell(cb.triplet(A[i])));
        w.push_back(mkcell(i + 1 < k ? s : sp));
    }
    std::vector<int> order;
    for (const Cell& c : w) order.push_back(c.id);

    Microprogram mp;
    mp.name = "rule" + std::to_string(rule.id) +
              (dir == Direction::Forward ? "_fwd" : "_rev");
    std::vector<std::vector<int>> op_cells;  // window cell ids per op, empty: no table row
    std::string prev;
    int pcr_no = 1;

    auto push_op = [&](PcrOp op, const std::vector<Cell>* wstate, std::size_t begin) {
        if (wstate && cells_ok) {
            op.window_begin = begin;
            op.window_len = wstate->size() * wl;
            std::vector<int> ids;
            for (const Cell& c : *wstate) ids.push_back(c.id);
            op_cells.push_back(std::move(ids));
        } else {
            op_cells.push_back({});
        }
        prev = op.label;
        mp.ops.push_back(std::move(op));
    };

    {
        PcrOp op;
        op.label = "PCR " + std::to_string(pcr_no++);
        op.fwd.primer = Primer{clamp + text_of(w), PrimerRole::Edit, clamp.size()};
        op.fwd.context = W_A;
        op.rev.primer = EP;
        op.policy = exact;
        push_op(std::move(op), &w, clamp.size());
    }

    auto emit_edit = [&](std::vector<Cell> neww) {
        PcrOp op;
        op.label = "PCR " + std::to_string(pcr_no++);
        op.fwd.primer = Primer{clamp + text_of(neww), PrimerRole::Edit, 0};
        op.fwd.context = clamp + text_of(w);
        op.rev.primer = EP;
        op.template_step = prev;
        op.policy = exact;
        w = std::move(neww);
        push_op(std::move(op), &w, clamp.size());
    };
    auto write_slot = [&](std::size_t slot, const std::string& tri) {
        auto neww = w;
        neww[2 * slot - 1].text = tri;
        emit_edit(std::move(neww));
    };
    auto insert_after_first_slot = [&]() {
        auto neww = w;
        Cell cz = mkcell(z), cs = mkcell(s);
        auto at = std::find(order.begin(), order.end(), w[2].id);
        order.insert(at + 1, {cz.id, cs.id});
        neww.insert(neww.begin() + 3, {cz, cs});
        emit_edit(std::move(neww));
    };
    auto delete_slot = [&](std::size_t slot) {
        auto neww = w;
        neww.erase(neww.begin() + 2 * slot - 1, neww.begin() + 2 * slot + 1);
        emit_edit(std::move(neww));
    };

    // Permute stage: line the shared slots up with the replacement. A direct
    // write that would transiently repeat a coding symbol next to itself is
    // ambiguous chemistry, so those plans detour every changing slot through
    // the scratch triplet.
    const std::size_t shared = std::min(k, m);
    std::vector<Symbol> target(A.begin(), A.end());
    for (std::size_t i = 0; i < shared; ++i) target[i] = B[i];
    std::vector<Symbol> cur(A.begin(), A.end());
    std::vector<std::size_t> changing;
    for (std::size_t i = 0; i < k; ++i)
        if (cur[i] != target[i]) changing.push_back(i);
    if (!changing.empty()) {
        bool hazard = false;
        std::vector<Symbol> probe = cur;
        for (std::size_t i : changing) {
            probe[i] = target[i];
            for (std::size_t j = 0; j + 1 < probe.size(); ++j)
                if (probe[j] == probe[j + 1] && cb.words().count(probe[j])) hazard = true;
        }
        if (hazard)
            for (std::size_t i : changing) {
                write_slot(i + 1, x);
                cur[i] = "x";
            }
        for (std::size_t i : changing) {
            write_slot(i + 1, cb.triplet(target[i]));
            cur[i] = target[i];
        }
    }
    // Length stage: grow with placeholder insertions after the first slot,
    // shrink by marking then looping out whole cells.
    if (m > k)
        for (std::size_t t = 0; t < m - k; ++t) {
            insert_after_first_slot();
            cur.insert(cur.begin() + 1, "z");
        }
    if (m < k) {
        for (std::size_t slot = 2; slot <= k - m + 1; ++slot) {
            write_slot(slot, z);
            cur[slot - 1] = "z";
        }
        for (std::size_t t = 0; t < k - m; ++t) {
            delete_slot(2);
            cur.erase(cur.begin() + 1);
        }
    }
    // Finish stage: rewrite whatever the length stage left behind.
    if (m != k)
        for (std::size_t slot = 2; slot <= m; ++slot)
            if (cur[slot - 1] != B[slot - 1]) {
                write_slot(slot, cb.triplet(B[slot - 1]));
                cur[slot - 1] = B[slot - 1];
            }

    {
        // Left flank back to the plain spacer (right one too when they touch).
        auto neww = w;
        neww[0].text = s;
        neww[2].text = s;
        PcrOp op;
        op.label = "restore left";
        op.fwd.primer = Primer{clamp + s + cb.triplet(B[0]) + s, PrimerRole::Edit, 0};
        op.fwd.context = clamp + w[0].text + w[1].text + w[2].text;
        op.rev.primer = EP;
        op.template_step = prev;
        op.policy = exact;
        w = std::move(neww);
        push_op(std::move(op), &w, clamp.size());
    }
    {
        // Right flank restored by a window-wide reverse primer; everything
        // past the window is deliberately dropped here.
        auto neww = w;
        neww.back().text = s;
        PcrOp op;
        op.label = "restore right";
        op.fwd.primer = Primer{clamp, PrimerRole::Edit, 0};
        op.rev.primer = Primer{revcomp(W_B), PrimerRole::Edit, 0};
        op.rev.context = clamp + text_of(w);
        op.rev.context_offset = clamp.size();
        op.template_step = prev;
        op.policy = exact;
        w = std::move(neww);
        push_op(std::move(op), &w, clamp.size());
    }
    {
        PcrOp op;
        op.label = "megaprimer";
        op.kind = PcrOp::Kind::Asymmetric;
        op.fwd.primer = Primer{s + cb.triplet(B[0]) + s, PrimerRole::Megaprimer, 0};
        op.fwd.context = clamp + s + cb.triplet(B[0]) + s;
        op.fwd.context_offset = clamp.size();
        op.template_step = prev;
        op.policy = exact;
        push_op(std::move(op), &w, 0);
    }
    {
        PcrOp op;
        op.label = "splice suffix";
        op.fwd.from_step = prev;
        op.fwd.context = W_A;
        op.rev.primer = EP;
        op.policy = exact;
        push_op(std::move(op), &w, 0);
    }
    {
        PcrOp op;
        op.label = "splice prefix";
        op.fwd.primer = start_primer(cb);
        op.rev.from_step = prev;
        op.rev.reverse_molecule = true;
        op.rev.ref_split = W_B.size();
        op.rev.context = W_A;
        op.policy = exact;
        push_op(std::move(op), nullptr, 0);
    }

    mp.table_width = order.size();
    for (std::size_t i = 0; i < mp.ops.size(); ++i) {
        for (int id : op_cells[i]) {
            auto it = std::find(order.begin(), order.end(), id);
            mp.ops[i].window_columns.push_back(
                static_cast<std::size_t>(it - order.begin()));
        }
    }
    return mp;
}

std::vector<std::string> builtin_microprogram_names() {
    return {"swap_ce_ec", "swap_ec_ce", "insert_ec_eca", "delete_eca_ec", "rule5_fwd",
            "rule5_rev"};
}

Microprogram builtin_microprogram(const std::string& name, const CodeBook& cb) {
    auto adhoc = [&](std::vector<Symbol> a, std::vector<Symbol> b) {
        ThueRule r{0, std::move(a), std::move(b), RuleMode::Symmetric};
        Microprogram mp = compile_rule(r, Direction::Forward, cb);
        mp.name = name;
        return mp;
    };
    if (name == "swap_ce_ec") return adhoc({"c", "e"}, {"e", "c"});
    if (name == "swap_ec_ce") return adhoc({"e", "c"}, {"c", "e"});
    if (name == "insert_ec_eca") return adhoc({"e", "c"}, {"e", "c", "a"});
    if (name == "delete_eca_ec") return adhoc({"e", "c", "a"}, {"e", "c"});
    if (name == "rule5_fwd")
        return compile_rule(RuleSet::universal().by_id(5), Direction::Forward, cb);
    if (name == "rule5_rev")
        return compile_rule(RuleSet::universal().by_id(5), Direction::Reverse, cb);
    throw Error("no builtin microprogram named '" + name + "'");
}

Pool apply_rule_pool(const Pool& programs, const ThueRule& rule, Direction dir,
                     const CodeBook& cb) {
    return run_microprogram(compile_rule(rule, dir, cb), programs).products;
}

Pool recognize(const Pool& programs, const std::vector<Symbol>& antecedent, const CodeBook& cb) {
    if (antecedent.empty()) throw Error("recognize: empty antecedent");
    Primer probe{cb.clamp() + cb.encode_region(antecedent), PrimerRole::Edit,
                 cb.clamp().size()};
    return symmetric_pcr(programs, probe, end_primer(cb), BindingPolicy{6, 0, 0, std::nullopt});
}

} // namespace nutm
