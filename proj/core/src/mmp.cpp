#include <mmpfloer/mmp.hpp>

#include <mmpfloer/linalg.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

namespace mmpfloer::mmp {

namespace {

using polytope::Polytope;
using polytope::ShrinkKind;

Rational qmin(const QVector& v) {
    Rational m = v.front();
    for (const auto& x : v) m = std::min(m, x);
    return m;
}

Rational qmax(const QVector& v) {
    Rational m = v.front();
    for (const auto& x : v) m = std::max(m, x);
    return m;
}

Rational qsum(const QVector& v) {
    Rational s(0);
    for (const auto& x : v) s += x;
    return s;
}

std::string lengths_to_string(const QVector& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += rational_to_string(v[i]);
    }
    return s + ")";
}

std::string count_word(size_t k) {
    switch (k) {
        case 1: return "once";
        case 2: return "twice";
        case 3: return "thrice";
        default: return std::to_string(k) + "-fold";
    }
}

std::string projective_space(long d) {
    if (d < 0) return "empty";
    return d == 0 ? std::string("pt") : "P^" + std::to_string(d);
}

}  // namespace

std::string kind_to_string(TransitionKind k) {
    switch (k) {
        case TransitionKind::Flip: return "Flip";
        case TransitionKind::DivisorialContraction: return "DivisorialContraction";
        case TransitionKind::MoriFibration: return "MoriFibration";
        case TransitionKind::Empty: return "Empty";
    }
    return "?";
}

// -- toric ------------------------------------------------------------------

namespace {

std::string toric_state_desc(const Polytope& Q) {
    auto verts = polytope::vertices(Q);
    if (verts.size() == 1) return "pt";
    return "toric(" + std::to_string(verts.size()) + " vertices)";
}

std::vector<Rational> toric_times(const Polytope& P) {
    std::vector<Rational> times;
    for (const auto& d : polytope::degenerate_locus(P)) times.push_back(d.t);
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());
    return times;
}

}  // namespace

Transition classify_toric_transition(const Polytope& P, const Rational& t) {
    auto times = toric_times(P);
    if (std::find(times.begin(), times.end(), t) == times.end())
        throw std::invalid_argument("classify_toric_transition: not a transition time");
    Rational delta = t / 2;
    for (const auto& s : times) {
        if (s == t) continue;
        Rational gap = abs(s - t) / 2;
        delta = std::min(delta, gap);
    }
    auto before = polytope::shrink(P, t - delta);
    auto after = polytope::shrink(P, t + delta);
    auto before_verts = polytope::vertices(before.poly);

    Transition tr;
    tr.time = t;
    for (const auto& d : polytope::degenerate_locus(P))
        if (d.t == t) tr.witnesses.push_back(ToricWitness{d.point, d.active});
    tr.before_desc = toric_state_desc(before.poly);

    if (after.kind != ShrinkKind::Full) {
        tr.kind = TransitionKind::MoriFibration;
        auto limit = polytope::shrink(P, t);
        tr.after_desc =
            limit.kind == ShrinkKind::Empty ? "pt" : toric_state_desc(limit.poly);
        tr.multiplicity = long(before_verts.size()) -
                          (limit.kind == ShrinkKind::Empty
                               ? 0
                               : long(polytope::vertices(limit.poly).size()));
        return tr;
    }
    auto after_verts = polytope::vertices(after.poly);
    tr.after_desc = toric_state_desc(after.poly);
    tr.multiplicity = long(before_verts.size()) - long(after_verts.size());

    auto facet_tight = [&](const std::vector<polytope::VertexData>& verts, size_t j) {
        for (const auto& v : verts)
            if (std::find(v.active.begin(), v.active.end(), j) != v.active.end()) return true;
        return false;
    };
    bool facet_disappears = false;
    for (size_t j = 0; j < P.normals.size(); ++j)
        if (facet_tight(before_verts, j) && !facet_tight(after_verts, j)) facet_disappears = true;
    tr.kind = facet_disappears ? TransitionKind::DivisorialContraction : TransitionKind::Flip;
    return tr;
}

std::vector<Transition> toric_transition_times(const Polytope& P) {
    std::vector<Transition> out;
    for (const auto& t : toric_times(P)) out.push_back(classify_toric_transition(P, t));
    return out;
}

ToricFiberReport toric_regular_fiber(const Polytope& P, const Transition& tr) {
    if (tr.witnesses.empty() || !std::holds_alternative<ToricWitness>(tr.witnesses.front()))
        throw std::invalid_argument("toric_regular_fiber: transition carries no toric witness");
    const auto& w = std::get<ToricWitness>(tr.witnesses.front());
    // solve <mu,nu_j> = c_j + t over the active facets
    linalg::QMatrix A;
    QVector b;
    for (size_t j : w.active) {
        A.push_back(linalg::int_to_rational(P.normals[j]));
        b.push_back(P.constants[j] + tr.time);
    }
    auto sol = linalg::solve_rational(A, b);
    if (!sol.consistent)
        throw std::runtime_error("toric_regular_fiber: active-facet system is inconsistent");
    ToricFiberReport rep;
    rep.point = sol.nullspace.empty() ? sol.particular : w.point;
    if (!sol.nullspace.empty())
        rep.note = "equal-gap system underdetermined; witness barycenter reported";
    rep.terminal = tr.kind == TransitionKind::MoriFibration;
    rep.regular = true;
    QVector gaps = polytope::facet_gaps(P, rep.point);
    for (size_t j = 0; j < gaps.size(); ++j) {
        bool active = std::find(w.active.begin(), w.active.end(), j) != w.active.end();
        if (!active && gaps[j] <= tr.time) rep.regular = false;
        if (active && gaps[j] != tr.time)
            throw std::runtime_error("toric_regular_fiber: witness fails the equal-gap equations");
    }
    return rep;
}

// -- polygon spaces ---------------------------------------------------------

namespace {

bool polygon_nonempty(const QVector& lengths) {
    return 2 * qmax(lengths) <= qsum(lengths);
}

// moduli of polygons with the given (positive) edge lengths
std::string polygon_space_desc(const QVector& lengths) {
    size_t n = lengths.size();
    if (n < 3 || !polygon_nonempty(lengths)) return "empty";
    if (n == 3) return "pt";
    if (n == 4) return "S^2";
    return "P" + lengths_to_string(lengths);
}

struct PolygonTerminal {
    Rational time;
    bool fibration = false;  // else the moduli becomes empty
};

PolygonTerminal polygon_terminal(const QVector& lengths) {
    size_t n = lengths.size();
    Rational t_fib = qmin(lengths);
    Rational t_empty = (qsum(lengths) - 2 * qmax(lengths)) / Rational(long(n) - 2);
    PolygonTerminal term;
    if (t_empty < t_fib) {
        term.time = t_empty;
        term.fibration = false;
    } else {
        term.time = t_fib;
        term.fibration = true;
    }
    return term;
}

Transition polygon_terminal_transition(const QVector& lengths) {
    size_t n = lengths.size();
    PolygonTerminal term = polygon_terminal(lengths);
    Transition tr;
    tr.time = term.time;
    if (!term.fibration) {
        tr.kind = TransitionKind::Empty;
        tr.before_desc = projective_space(long(n) - 3);
        tr.after_desc = "empty";
        return tr;
    }
    tr.kind = TransitionKind::MoriFibration;
    QVector base;
    size_t zeros = 0;
    for (const auto& l : lengths) {
        if (l == term.time)
            ++zeros;
        else
            base.push_back(l - term.time);
    }
    std::string base_desc = polygon_space_desc(base);
    tr.after_desc = base_desc;
    if (base_desc == "pt") {
        std::string s;
        for (size_t i = 0; i < zeros; ++i) s += (i ? " x S^2" : "S^2");
        tr.before_desc = zeros ? s : "pt";
    } else {
        tr.before_desc =
            (zeros ? "(S^2)^" + std::to_string(zeros) + "-bundle over " : "") + base_desc;
    }
    return tr;
}

}  // namespace

Transition classify_polygon_transition(const QVector& lengths, const Rational& t,
                                       const std::vector<int>& signs) {
    if (signs.size() != lengths.size())
        throw std::invalid_argument("classify_polygon_transition: witness length mismatch");
    Rational resid(0);
    long plus = 0, minus = 0;
    PolygonWitness w;
    w.signs = signs;
    for (size_t i = 0; i < signs.size(); ++i) {
        if (signs[i] != 1 && signs[i] != -1)
            throw std::invalid_argument("classify_polygon_transition: signs must be +-1");
        resid += Rational(signs[i]) * (lengths[i] - t);
        if (signs[i] == 1) {
            ++plus;
            w.plus_lengths.push_back(lengths[i] - t);
        } else {
            ++minus;
            w.minus_lengths.push_back(lengths[i] - t);
        }
    }
    if (resid != 0)
        throw std::invalid_argument("classify_polygon_transition: inconsistent witness");
    Transition tr;
    tr.time = t;
    tr.witnesses.push_back(std::move(w));
    tr.multiplicity = plus - minus;
    // the exceptional loci are moduli of configurations with the plus
    // (resp. minus) edges aligned: projective spaces of dimensions
    // #plus - 2 and #minus - 2
    tr.before_desc = projective_space(plus - 2);
    tr.after_desc = projective_space(minus - 2);
    tr.kind = (minus == 2 || plus == 2) ? TransitionKind::DivisorialContraction
                                        : TransitionKind::Flip;
    return tr;
}

std::vector<Transition> polygon_transition_times(const QVector& lengths) {
    size_t n = lengths.size();
    if (n < 3) throw std::invalid_argument("polygon_transition_times: need at least 3 edges");
    for (const auto& l : lengths)
        if (l <= 0) throw std::invalid_argument("polygon_transition_times: lengths must be positive");
    if (!polygon_nonempty(lengths))
        throw std::invalid_argument("polygon_transition_times: empty initial moduli");

    PolygonTerminal term = polygon_terminal(lengths);
    std::map<Rational, std::vector<std::vector<int>>> by_time;
    for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
        std::vector<int> signs(n, -1);
        long plus = 0;
        Rational num(0);
        for (size_t i = 0; i < n; ++i) {
            if (mask & (1ul << i)) {
                signs[i] = 1;
                ++plus;
            }
        }
        long minus = long(n) - plus;
        if (plus <= minus) continue;  // canonical representative, nonzero sign sum
        for (size_t i = 0; i < n; ++i) num += Rational(signs[i]) * lengths[i];
        Rational t = num / Rational(plus - minus);
        if (t <= 0 || t >= term.time) continue;
        by_time[t].push_back(std::move(signs));
    }
    std::vector<Transition> out;
    for (const auto& [t, witnesses] : by_time) {
        Transition tr = classify_polygon_transition(lengths, t, witnesses.front());
        for (size_t i = 1; i < witnesses.size(); ++i) {
            Transition extra = classify_polygon_transition(lengths, t, witnesses[i]);
            tr.witnesses.push_back(extra.witnesses.front());
        }
        out.push_back(std::move(tr));
    }
    out.push_back(polygon_terminal_transition(lengths));
    return out;
}

Rational looseness_triangle(const Rational& m1, const Rational& m2, const Rational& m3) {
    Rational l = std::min({m1 + m2 - m3, m1 + m3 - m2, m2 + m3 - m1});
    return l / 2;
}

Rational looseness_pants(const Rational& m1, const Rational& m2, const Rational& m3) {
    Rational l = std::min({m1 + m2 - m3, m1 + m3 - m2, m2 + m3 - m1});
    return std::min(l, Rational(1) - m1 - m2 - m3);
}

namespace {

struct Side {
    bool is_var = false;
    size_t var = 0;     // diagonal index when is_var
    Rational value;     // edge length otherwise
};

struct TriangleSpec {
    Side s[3];
};

// canonical caterpillar: I_j = {1, ..., j+1}
std::vector<TriangleSpec> caterpillar_triangles(const QVector& lengths) {
    size_t n = lengths.size();
    std::vector<TriangleSpec> tris;
    TriangleSpec first;
    first.s[0] = {false, 0, lengths[0]};
    first.s[1] = {false, 0, lengths[1]};
    first.s[2] = {true, 0, Rational(0)};
    tris.push_back(first);
    for (size_t j = 1; j + 1 <= n - 3; ++j) {
        TriangleSpec t;
        t.s[0] = {true, j - 1, Rational(0)};
        t.s[1] = {false, 0, lengths[j + 1]};
        t.s[2] = {true, j, Rational(0)};
        tris.push_back(t);
    }
    TriangleSpec last;
    last.s[0] = {true, n - 4, Rational(0)};
    last.s[1] = {false, 0, lengths[n - 2]};
    last.s[2] = {false, 0, lengths[n - 1]};
    tris.push_back(last);
    return tris;
}

Rational flat_first_event_time(const QVector& labels);

}  // namespace

std::optional<RegularLabels> regular_labels(const QVector& lengths, LoosenessMode mode) {
    size_t n = lengths.size();
    if (n < 4) throw std::invalid_argument("regular_labels: need at least 4 edges");
    auto tris = caterpillar_triangles(lengths);
    const size_t nvars = n - 3;      // diagonals
    const size_t unknowns = nvars + 1;  // + common looseness
    const size_t ntris = tris.size();
    const size_t nbranches = mode == LoosenessMode::Triangle ? 3 : 4;

    auto side_values = [&](const TriangleSpec& t, const QVector& mu) {
        QVector v(3);
        for (int i = 0; i < 3; ++i) v[i] = t.s[i].is_var ? mu[t.s[i].var] : t.s[i].value;
        return v;
    };
    auto branch_values = [&](const QVector& s) {
        QVector b{s[0] + s[1] - s[2], s[0] + s[2] - s[1], s[1] + s[2] - s[0]};
        if (mode == LoosenessMode::Pants) b.push_back(Rational(1) - s[0] - s[1] - s[2]);
        return b;
    };

    std::optional<RegularLabels> best;
    std::vector<size_t> choice(ntris, 0);
    std::function<void(size_t)> rec = [&](size_t depth) {
        if (depth < ntris) {
            for (size_t b = 0; b < nbranches; ++b) {
                choice[depth] = b;
                rec(depth + 1);
            }
            return;
        }
        // assemble the linear system over (mu_1..mu_{n-3}, l)
        linalg::QMatrix A(ntris, QVector(unknowns, Rational(0)));
        QVector rhs(ntris, Rational(0));
        for (size_t ti = 0; ti < ntris; ++ti) {
            const auto& t = tris[ti];
            QVector coef(3);  // branch k: signs on the three sides
            size_t b = choice[ti];
            if (b < 3) {
                coef = {Rational(1), Rational(1), Rational(1)};
                coef[2 - b] = -1;  // branch 0: s0+s1-s2, 1: s0+s2-s1, 2: s1+s2-s0
            } else {
                coef = {Rational(-1), Rational(-1), Rational(-1)};
                rhs[ti] -= 1;  // 1 - s0 - s1 - s2 = l
            }
            for (int i = 0; i < 3; ++i) {
                if (t.s[i].is_var)
                    A[ti][t.s[i].var] += coef[i];
                else
                    rhs[ti] -= coef[i] * t.s[i].value;
            }
            A[ti][nvars] = -1;  // ... = l
        }
        auto sol = linalg::solve_rational(A, rhs);
        if (!sol.consistent || !sol.nullspace.empty()) return;
        QVector mu(sol.particular.begin(), sol.particular.begin() + nvars);
        Rational l = sol.particular[nvars];
        for (const auto& m : mu) {
            if (m < 0) return;
            if (mode == LoosenessMode::Pants && m > Rational(1, 2)) return;
        }
        // branch consistency: the chosen branch must realize the minimum
        for (size_t ti = 0; ti < ntris; ++ti) {
            QVector bv = branch_values(side_values(tris[ti], mu));
            Rational mn = qmin(bv);
            if (bv[choice[ti]] != l || mn != l) return;
        }
        if (!best || l > best->looseness) {
            RegularLabels rl;
            rl.diagonals = mu;
            rl.looseness = l;
            best = rl;
        }
    };
    rec(0);
    if (best) {
        best->first_fibration_time = mode == LoosenessMode::Triangle
                                         ? polygon_terminal(lengths).time
                                         : flat_first_event_time(lengths);
        best->ordering_ok = best->first_fibration_time > best->looseness;
    }
    return best;
}

// -- flat bundles -----------------------------------------------------------

namespace {

void check_flat_labels(const QVector& labels) {
    for (const auto& l : labels)
        if (l < 0 || l > Rational(1, 2))
            throw std::invalid_argument("flat labels must lie in [0, 1/2]");
}

struct FlatTerminal {
    bool exists = false;
    Rational time;
    bool fibration = false;
    size_t marking = 0;  // which label hits the alcove boundary
    bool hits_half = false;
};

FlatTerminal flat_terminal(const QVector& labels) {
    size_t n = labels.size();
    FlatTerminal term;
    // fibration: a running label (lambda_i - t)/(1 - 4t) reaches 0 or 1/2
    for (size_t i = 0; i < n; ++i) {
        Rational t;
        bool half;
        if (labels[i] < Rational(1, 4)) {
            t = labels[i];
            half = false;
        } else if (labels[i] > Rational(1, 4)) {
            t = Rational(1, 2) - labels[i];
            half = true;
        } else {
            continue;  // stationary marking
        }
        if (!term.exists || t < term.time) {
            term.exists = true;
            term.time = t;
            term.fibration = true;
            term.marking = i;
            term.hits_half = half;
        }
    }
    // emptiness via the odd-subset inequalities on the running labels
    for (unsigned long mask = 1; mask < (1ul << n); ++mask) {
        size_t sz = size_t(__builtin_popcountl(long(mask)));
        if (sz % 2 == 0) continue;
        long k = (long(sz) - 1) / 2;
        Rational in(0), out_sum(0);
        for (size_t i = 0; i < n; ++i)
            ((mask >> i) & 1 ? in : out_sum) += labels[i];
        // sum_I (l - t) > k (1-4t) + sum_{I^c} (l - t)  flips at t_I
        Rational t_I = (Rational(k) + out_sum - in) / Rational(long(n) - 2);
        // the running lives on [0, 1/4); the horizon itself is not an event
        if (t_I <= 0 || t_I >= Rational(1, 4)) continue;
        if (!term.exists || t_I < term.time) {
            term.exists = true;
            term.time = t_I;
            term.fibration = false;
        }
    }
    return term;
}

Rational flat_first_event_time(const QVector& labels) {
    FlatTerminal t = flat_terminal(labels);
    return t.exists ? t.time : Rational(1, 4);
}

QVector flat_running_labels(const QVector& labels, const Rational& t) {
    QVector out;
    Rational denom = Rational(1) - 4 * t;
    for (const auto& l : labels) out.push_back((l - t) / denom);
    return out;
}

}  // namespace

bool flat_nonempty(const QVector& labels) {
    check_flat_labels(labels);
    size_t n = labels.size();
    for (unsigned long mask = 1; mask < (1ul << n); ++mask) {
        size_t sz = size_t(__builtin_popcountl(long(mask)));
        if (sz % 2 == 0) continue;
        long k = (long(sz) - 1) / 2;
        Rational in(0), out_sum(0);
        for (size_t i = 0; i < n; ++i)
            ((mask >> i) & 1 ? in : out_sum) += labels[i];
        if (in > Rational(k) + out_sum) return false;
    }
    return true;
}

std::vector<Transition> flat_transition_times(const QVector& labels) {
    check_flat_labels(labels);
    if (!flat_nonempty(labels))
        throw std::invalid_argument("flat_transition_times: empty initial moduli");
    size_t n = labels.size();
    FlatTerminal term = flat_terminal(labels);
    Rational horizon = term.exists ? term.time : Rational(1, 4);

    std::map<Rational, std::vector<FlatWitness>> by_time;
    for (unsigned long mask = 1; mask < (1ul << n); ++mask) {
        long s = __builtin_popcountl(long(mask));
        Rational lam_sum(0);
        for (size_t i = 0; i < n; ++i)
            if ((mask >> i) & 1) lam_sum += labels[i];
        for (long twice_h = 0; twice_h <= s; ++twice_h) {
            Rational h(twice_h, 2);
            if (Rational(s) == 4 * h) continue;  // the equation degenerates
            Rational t = (h - lam_sum) / (4 * h - Rational(s));
            if (t <= 0 || t >= Rational(1, 4) || t >= horizon) continue;
            QVector running = flat_running_labels(labels, t);
            bool ok = true;
            for (const auto& m : running) ok = ok && m >= 0 && m <= Rational(1, 2);
            if (!ok) continue;
            FlatWitness w;
            for (size_t i = 0; i < n; ++i) w.subset.push_back(int((mask >> i) & 1));
            w.half_integer = h;
            by_time[t].push_back(std::move(w));
        }
    }
    std::vector<Transition> out;
    for (auto& [t, witnesses] : by_time) {
        Transition tr;
        tr.time = t;
        tr.kind = TransitionKind::Flip;
        for (auto& w : witnesses) tr.witnesses.push_back(std::move(w));
        out.push_back(std::move(tr));
    }
    if (term.exists) {
        Transition tr;
        tr.time = term.time;
        if (term.fibration) {
            tr.kind = TransitionKind::MoriFibration;
            QVector base = flat_running_labels(labels, term.time);
            if (term.hits_half)
                base[term.marking] = Rational(1, 2);
            else
                base.erase(base.begin() + long(term.marking));
            tr.before_desc = "P^1-bundle over flat" + lengths_to_string(base);
            tr.after_desc = "flat" + lengths_to_string(base);
        } else {
            tr.kind = TransitionKind::Empty;
            tr.before_desc = projective_space(long(n) - 3);
            tr.after_desc = "empty";
        }
        out.push_back(std::move(tr));
    }
    return out;
}

// -- flag varieties ---------------------------------------------------------

MmpRunning flag_walk(const QVector& weight) {
    size_t n = weight.size();
    if (n < 2) throw std::invalid_argument("flag_walk: rank must be at least 2");
    for (size_t i = 0; i + 1 < n; ++i)
        if (weight[i] <= weight[i + 1])
            throw std::invalid_argument("flag_walk: weight must be strictly dominant");

    // rho = ((n-1)/2, (n-3)/2, ..., (1-n)/2)
    QVector rho;
    for (size_t i = 0; i < n; ++i) rho.push_back(Rational(long(n) - 1 - 2 * long(i), 2));

    struct Block {
        size_t start, size;
        Rational value, speed;
    };
    std::vector<Block> blocks;
    for (size_t i = 0; i < n; ++i) blocks.push_back({i, 1, weight[i], rho[i]});

    auto flag_type = [&](const std::vector<Block>& bs) {
        if (bs.size() == 1) return std::string("pt");
        std::string s = "Fl(";
        for (size_t i = 0; i < bs.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(bs[i].size);
        }
        return s + ";" + std::to_string(n) + ")";
    };

    MmpRunning run;
    run.geometry_desc = "flag walk on Fl(C^" + std::to_string(n) + "), weight " +
                        lengths_to_string(weight);
    Rational now(0);
    while (blocks.size() > 1) {
        Rational dt(-1);
        for (size_t i = 0; i + 1 < blocks.size(); ++i) {
            Rational step = (blocks[i].value - blocks[i + 1].value) /
                            (blocks[i].speed - blocks[i + 1].speed);
            if (dt < 0 || step < dt) dt = step;
        }
        now += dt;
        for (auto& b : blocks) b.value -= dt * b.speed;
        Transition tr;
        tr.time = now;
        tr.kind = TransitionKind::MoriFibration;
        tr.before_desc = flag_type(blocks);
        FlagWitness w;
        std::vector<Block> merged;
        for (auto& b : blocks) {
            if (!merged.empty() && merged.back().value == b.value) {
                w.merged_walls.push_back(merged.back().start + merged.back().size - 1);
                if (!w.fiber.empty()) w.fiber += " x ";
                w.fiber += "Gr(" + std::to_string(merged.back().size) + "," +
                           std::to_string(merged.back().size + b.size) + ")";
                merged.back().size += b.size;
            } else {
                merged.push_back(b);
            }
        }
        // projected rho on the merged face: block averages of the original rho
        for (auto& b : merged) {
            Rational s(0);
            for (size_t i = b.start; i < b.start + b.size; ++i) s += rho[i];
            b.speed = s / Rational(long(b.size));
        }
        blocks = std::move(merged);
        tr.after_desc = flag_type(blocks);
        tr.witnesses.push_back(std::move(w));
        run.transitions.push_back(std::move(tr));
    }
    run.terminal = "pt";
    run.overall_desc = std::to_string(run.transitions.size()) +
                       " Mori fibration(s), no flips or divisorial contractions";
    return run;
}

// -- assembly ---------------------------------------------------------------

namespace {

std::string overall_blowup_desc(const std::vector<Transition>& transitions) {
    if (transitions.empty()) return "trivial running";
    const Transition& last = transitions.back();
    size_t interior = transitions.size() - 1;
    std::string minimal = last.before_desc;
    if (interior == 0) return minimal;
    return count_word(interior) + " blow-up of " + minimal;
}

}  // namespace

MmpRunning run_mmp(const Geometry& geometry) {
    MmpRunning run;
    if (const auto* tg = std::get_if<ToricGeometry>(&geometry)) {
        const auto& P = tg->poly;
        run.geometry_desc = "toric polytope, dim " + std::to_string(P.dim) + ", " +
                            std::to_string(P.normals.size()) + " facets";
        run.transitions = toric_transition_times(P);
        for (auto& tr : run.transitions) tr.regular_lagrangian = toric_regular_fiber(P, tr);
        run.terminal = run.transitions.empty() ? "no transitions (static polytope)"
                                               : run.transitions.back().after_desc;
        run.overall_desc = overall_blowup_desc(run.transitions);
    } else if (const auto* pg = std::get_if<PolygonGeometry>(&geometry)) {
        run.geometry_desc = "polygon space P" + lengths_to_string(pg->lengths);
        run.transitions = polygon_transition_times(pg->lengths);
        auto rl = regular_labels(pg->lengths, LoosenessMode::Triangle);
        if (rl) {
            for (auto& tr : run.transitions)
                if (tr.time == rl->looseness) tr.regular_lagrangian = *rl;
        }
        run.terminal = run.transitions.back().after_desc;
        run.overall_desc = overall_blowup_desc(run.transitions);
    } else if (const auto* fg = std::get_if<FlatGeometry>(&geometry)) {
        run.geometry_desc = "flat SU(2)-bundle moduli, labels " + lengths_to_string(fg->labels);
        run.transitions = flat_transition_times(fg->labels);
        if (fg->labels.size() >= 4) {
            auto rl = regular_labels(fg->labels, LoosenessMode::Pants);
            if (rl) {
                for (auto& tr : run.transitions)
                    if (tr.time == rl->looseness) tr.regular_lagrangian = *rl;
            }
        }
        if (run.transitions.empty()) {
            run.terminal = "stationary running (all labels fixed)";
            run.overall_desc = "trivial running";
        } else {
            run.terminal = run.transitions.back().after_desc;
            run.overall_desc = overall_blowup_desc(run.transitions);
        }
    } else if (const auto* flg = std::get_if<FlagGeometry>(&geometry)) {
        run = flag_walk(flg->weight);
    }
    return run;
}

}  // namespace mmpfloer::mmp
