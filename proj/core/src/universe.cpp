#include "excat/universe.hpp"

#include <algorithm>

namespace excat {

namespace {

Mat mat_pow(const Mat& m, std::size_t e) {
    Mat acc = Mat::identity(m.field(), m.rows());
    for (std::size_t i = 0; i < e; ++i) acc = acc.mul(m);
    return acc;
}

std::string object_label(const std::vector<std::size_t>& mult,
                         const std::vector<std::string>& labels) {
    std::string out;
    for (std::size_t i = 0; i < mult.size(); ++i) {
        if (!mult[i]) continue;
        if (!out.empty()) out += "+";
        out += labels[i];
        if (mult[i] > 1) out += "^" + std::to_string(mult[i]);
    }
    return out.empty() ? "0" : out;
}

} // namespace

Mat Universe::t_action_of(const Module& m) const { return m.elem_action(t_elem_); }

std::shared_ptr<const Universe> Universe::build(std::shared_ptr<const Algebra> alg,
                                                std::vector<ModulePtr> seeds,
                                                std::vector<std::string> seed_labels,
                                                std::size_t mult_bound,
                                                std::uint64_t cap) {
    auto u = std::shared_ptr<Universe>(new Universe());
    u->alg_ = alg;
    u->seeds_ = std::move(seeds);
    u->bound_ = mult_bound;
    u->cap_ = cap;
    u->seed_labels_ = std::move(seed_labels);
    if (u->seed_labels_.size() != u->seeds_.size()) {
        u->seed_labels_.resize(u->seeds_.size());
        for (std::size_t i = 0; i < u->seeds_.size(); ++i)
            if (u->seed_labels_[i].empty()) u->seed_labels_[i] = "X" + std::to_string(i);
    }

    for (std::size_t i = 0; i < u->seeds_.size(); ++i) {
        if (!is_indecomposable(u->seeds_[i], cap))
            throw SpecError("decomposable seed at index " + std::to_string(i));
        for (std::size_t j = i + 1; j < u->seeds_.size(); ++j)
            if (are_isomorphic(u->seeds_[i], u->seeds_[j], cap))
                throw SpecError("duplicate iso-class in seed at indices (" + std::to_string(i) +
                                "," + std::to_string(j) + ")");
    }

    // chain-algebra detection: commutative local with the powers of a radical
    // generator spanning the whole algebra => A = k[t]/(t^dim), and modules
    // are classified by the Jordan type of rho(t)
    const Algebra& a = *alg;
    if (a.commutative() && a.is_local()) {
        const Mat& rad = a.radical();
        std::vector<Fe> t(a.dim(), 0);
        if (rad.rows() > 0)
            for (std::size_t c = 0; c < a.dim(); ++c) t[c] = rad.at(0, c);
        Mat powers(a.field(), a.dim(), a.dim());
        std::vector<Fe> acc = a.unit();
        for (std::size_t i = 0; i < a.dim(); ++i) {
            for (std::size_t c = 0; c < a.dim(); ++c) powers.at(i, c) = acc[c];
            acc = a.mul(acc, t);
        }
        if (rank(powers) == a.dim()) {
            u->jordan_ = true;
            u->t_elem_ = t;
            u->block_to_seed_.assign(a.dim() + 2, std::size_t(-1));
            for (std::size_t i = 0; i < u->seeds_.size(); ++i) {
                // each seed must be a single Jordan block; a chain algebra
                // admits no other indecomposables, but stay honest
                Mat T = u->seeds_[i]->elem_action(t);
                std::size_t nblocks = u->seeds_[i]->dim() - rank(T);
                if (nblocks != 1) { u->jordan_ = false; break; }
                std::size_t size = u->seeds_[i]->dim();
                u->block_to_seed_[size] = i;
            }
        }
    }

    // all multiplicity vectors, lexicographic (id 0 = zero object)
    std::vector<std::size_t> mult(u->seeds_.size(), 0);
    for (;;) {
        UniverseObject obj;
        obj.mult = mult;
        obj.label = object_label(mult, u->seed_labels_);
        std::vector<ModulePtr> parts;
        for (std::size_t i = 0; i < mult.size(); ++i)
            for (std::size_t k = 0; k < mult[i]; ++k) parts.push_back(u->seeds_[i]);
        obj.mod = parts.empty() ? Module::zero(alg) : direct_sum(parts).sum;
        u->index_[mult] = u->objects_.size();
        u->objects_.push_back(std::move(obj));
        // lexicographic successor: increment from the right
        std::size_t i = mult.size();
        while (i > 0) {
            --i;
            if (mult[i] < mult_bound) { ++mult[i]; break; }
            mult[i] = 0;
            if (i == 0) return u;
        }
        if (mult.empty()) return u;
        bool all_zero = true;
        for (auto v : mult) if (v) { all_zero = false; break; }
        if (all_zero) return u;
    }
}

std::optional<std::size_t> Universe::id_of(const std::vector<std::size_t>& mult) const {
    auto it = index_.find(mult);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::vector<std::size_t>> Universe::classify_jordan(const Module& m) const {
    if (m.dim() == 0) return std::vector<std::size_t>(seeds_.size(), 0);
    return classify_by_t(m.elem_action(t_elem_));
}

std::optional<std::vector<std::size_t>> Universe::classify_by_t(const Mat& T) const {
    std::vector<std::size_t> mult(seeds_.size(), 0);
    if (T.rows() == 0) return mult;
    // r[i] = rank(T^i); blocks of size s: r[s-1] - 2 r[s] + r[s+1]
    std::vector<std::size_t> r;
    Mat pw = Mat::identity(T.field(), T.rows());
    for (std::size_t i = 0; i <= alg_->dim() + 1; ++i) {
        r.push_back(rank(pw));
        if (r.back() == 0) break;
        pw = pw.mul(T);
    }
    while (r.size() < alg_->dim() + 2) r.push_back(0);
    for (std::size_t s = 1; s <= alg_->dim(); ++s) {
        std::size_t count = r[s - 1] + r[s + 1] - 2 * r[s];
        if (!count) continue;
        std::size_t seed = block_to_seed_[s];
        if (seed == std::size_t(-1)) return std::nullopt;
        mult[seed] = count;
    }
    return mult;
}

std::optional<std::vector<std::size_t>> Universe::classify(ModulePtr m) const {
    if (jordan_) return classify_jordan(*m);
    std::vector<std::size_t> mult(seeds_.size(), 0);
    if (m->dim() == 0) return mult;
    for (auto& part : indecompose(m, cap_)) {
        bool matched = false;
        for (std::size_t i = 0; i < seeds_.size(); ++i)
            if (part.part->dim() == seeds_[i]->dim() && are_isomorphic(part.part, seeds_[i], cap_)) {
                ++mult[i];
                matched = true;
                break;
            }
        if (!matched) return std::nullopt;
    }
    return mult;
}

std::optional<std::size_t> Universe::resolve(ModulePtr m) const {
    auto mult = classify(m);
    if (!mult) return std::nullopt;
    return id_of(*mult);
}

Morphism Universe::iso_to_object(ModulePtr m, std::size_t id) const {
    const UniverseObject& tgt = objects_[id];
    const PrimeField& f = alg_->field();
    if (m->dim() == 0 && tgt.mod->dim() == 0) return {m, tgt.mod, Mat(f, 0, 0)};
    // slots of the target in canonical order
    struct Slot { std::size_t seed; std::size_t offset; bool used = false; };
    std::vector<Slot> slots;
    std::size_t off = 0;
    for (std::size_t i = 0; i < tgt.mult.size(); ++i)
        for (std::size_t k = 0; k < tgt.mult[i]; ++k) {
            slots.push_back({i, off});
            off += seeds_[i]->dim();
        }
    Mat acc = Mat::zero(f, tgt.mod->dim(), m->dim());
    for (auto& part : indecompose(m, cap_)) {
        bool matched = false;
        for (auto& slot : slots) {
            if (slot.used || seeds_[slot.seed]->dim() != part.part->dim()) continue;
            auto iso = are_isomorphic(part.part, seeds_[slot.seed], cap_);
            if (!iso) continue;
            slot.used = true;
            matched = true;
            Mat block = iso->mat.mul(part.proj.mat);  // m -> seed copy
            for (std::size_t r = 0; r < block.rows(); ++r)
                for (std::size_t c = 0; c < block.cols(); ++c)
                    acc.at(slot.offset + r, c) = block.at(r, c);
            break;
        }
        if (!matched) throw SpecError("iso_to_object: module does not match the target class");
    }
    Morphism out{m, tgt.mod, std::move(acc)};
    if (!is_isomorphism(out)) throw SpecError("iso_to_object: module does not match the target class");
    return out;
}

const std::vector<Mat>& Universe::hom(std::size_t x, std::size_t y) const {
    auto key = std::make_pair(x, y);
    auto it = homs_.find(key);
    if (it != homs_.end()) return it->second;
    auto basis = hom_space(*objects_[x].mod, *objects_[y].mod);
    return homs_.emplace(key, std::move(basis)).first->second;
}

Preset preset_truncated_poly(std::uint32_t p, std::size_t n) {
    Preset out;
    out.alg = std::make_shared<Algebra>(algebra_truncated_poly(p, n));
    PrimeField f(p);
    for (std::size_t i = 1; i <= n; ++i) {
        // M_i = k[x]/(x^i): x acts as the i x i nilpotent shift
        Mat shift(f, i, i);
        for (std::size_t r = 1; r < i; ++r) shift.at(r, r - 1) = 1;
        std::vector<Mat> action;
        for (std::size_t j = 0; j < n; ++j) action.push_back(mat_pow(shift, j));
        out.seeds.push_back(Module::make(out.alg, std::move(action)));
        out.seed_labels.push_back("M" + std::to_string(i));
    }
    return out;
}

Preset preset_xy_square(std::uint32_t p) {
    Preset out;
    out.alg = std::make_shared<Algebra>(algebra_xy_square(p));
    PrimeField f(p);
    out.seeds.push_back(Module::make(out.alg, {Mat::identity(f, 1), Mat::zero(f, 1, 1), Mat::zero(f, 1, 1)}));
    out.seeds.push_back(Module::regular(out.alg));
    out.seed_labels = {"k", "R"};
    return out;
}

} // namespace excat
