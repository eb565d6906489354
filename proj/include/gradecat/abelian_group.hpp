#pragma once

#include "gradecat/smith.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gradecat {

class AbelianGroup;

namespace detail {
struct GroupShape {
    int free_rank = 0;
    std::vector<std::int64_t> torsion;
    bool operator==(const GroupShape&) const = default;
};

inline std::int64_t mod(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}
}  // namespace detail

// Element of a finitely generated abelian group, written additively.
class GroupElement {
public:
    GroupElement() = default;

    const std::vector<std::int64_t>& coords() const noexcept { return coords_; }
    std::int64_t operator[](std::size_t i) const { return coords_[i]; }
    std::size_t size() const noexcept { return coords_.size(); }
    bool is_zero() const {
        return std::all_of(coords_.begin(), coords_.end(), [](auto c) { return c == 0; });
    }

    bool same_parent(const GroupElement& o) const {
        return shape_ == o.shape_ || (shape_ && o.shape_ && *shape_ == *o.shape_);
    }

    friend bool operator==(const GroupElement& a, const GroupElement& b) {
        return a.coords_ == b.coords_ && a.same_parent(b);
    }
    friend bool operator<(const GroupElement& a, const GroupElement& b) { return a.coords_ < b.coords_; }

    std::string str() const {
        std::ostringstream os;
        os << '(';
        for (std::size_t i = 0; i < coords_.size(); ++i) os << (i ? "," : "") << coords_[i];
        os << ')';
        return os.str();
    }

    friend GroupElement combine(const GroupElement& a, const GroupElement& b);

private:
    friend class AbelianGroup;
    GroupElement(std::shared_ptr<const detail::GroupShape> shape, std::vector<std::int64_t> c)
        : shape_(std::move(shape)), coords_(std::move(c)) {}

    std::shared_ptr<const detail::GroupShape> shape_;
    std::vector<std::int64_t> coords_;
};

// Z^r x Z_{m_1} x ... x Z_{m_s}, m_1 | m_2 | ... | m_s, all m_i >= 2.
// Coordinates list the free factors first.
class AbelianGroup {
public:
    AbelianGroup() : shape_(std::make_shared<detail::GroupShape>()) {}

    AbelianGroup(int free_rank, std::vector<std::int64_t> torsion) {
        if (free_rank < 0) throw std::invalid_argument("negative free rank");
        for (std::size_t i = 0; i < torsion.size(); ++i) {
            if (torsion[i] < 2) throw std::invalid_argument("torsion orders must be >= 2");
            if (i > 0 && torsion[i] % torsion[i - 1] != 0)
                throw std::invalid_argument("torsion orders must form a divisibility chain");
        }
        shape_ = std::make_shared<detail::GroupShape>(detail::GroupShape{free_rank, std::move(torsion)});
    }

    static AbelianGroup cyclic(std::int64_t m) { return from_orders(0, {m}); }
    static AbelianGroup free(int r) { return AbelianGroup(r, {}); }

    // Normal form of Z^r x Z_{n_1} x ... with arbitrary n_i >= 1.
    static AbelianGroup from_orders(int free_rank, const std::vector<std::int64_t>& orders) {
        std::vector<std::int64_t> kept;
        for (auto n : orders) {
            if (n < 1) throw std::invalid_argument("cyclic order must be positive");
            if (n > 1) kept.push_back(n);
        }
        IntMatrix m(kept.size(), kept.size());
        for (std::size_t i = 0; i < kept.size(); ++i) m(i, i) = kept[i];
        auto snf = smith_normal_form(m);
        std::vector<std::int64_t> torsion;
        for (auto& d : snf.diagonal())
            if (d > 1) torsion.push_back(static_cast<std::int64_t>(d));
        return AbelianGroup(free_rank, std::move(torsion));
    }

    static AbelianGroup product(const AbelianGroup& a, const AbelianGroup& b) {
        auto orders = a.torsion();
        orders.insert(orders.end(), b.torsion().begin(), b.torsion().end());
        return from_orders(a.free_rank() + b.free_rank(), orders);
    }

    int free_rank() const noexcept { return shape_->free_rank; }
    const std::vector<std::int64_t>& torsion() const noexcept { return shape_->torsion; }
    std::size_t num_coords() const noexcept { return shape_->free_rank + shape_->torsion.size(); }
    bool is_finite() const noexcept { return shape_->free_rank == 0; }
    bool is_trivial() const noexcept { return num_coords() == 0; }

    // modulus of coordinate i; 0 for free coordinates
    std::int64_t modulus(std::size_t i) const {
        return i < static_cast<std::size_t>(free_rank()) ? 0 : torsion()[i - free_rank()];
    }

    std::uint64_t order() const {
        if (!is_finite()) throw std::domain_error("order of an infinite group");
        std::uint64_t n = 1;
        for (auto m : torsion()) n *= static_cast<std::uint64_t>(m);
        return n;
    }
    std::int64_t exponent() const {
        if (!is_finite()) throw std::domain_error("exponent of an infinite group");
        return torsion().empty() ? 1 : torsion().back();
    }
    bool is_elementary_2group() const { return is_finite() && (torsion().empty() || torsion().back() == 2); }

    friend bool operator==(const AbelianGroup& a, const AbelianGroup& b) { return *a.shape_ == *b.shape_; }
    bool isomorphic(const AbelianGroup& o) const { return *this == o; }

    // --- elements ---
    GroupElement element(std::vector<std::int64_t> c) const {
        if (c.size() != num_coords()) throw std::invalid_argument("element has wrong number of coordinates");
        for (std::size_t i = 0; i < c.size(); ++i)
            if (auto m = modulus(i)) c[i] = detail::mod(c[i], m);
        return GroupElement(shape_, std::move(c));
    }
    GroupElement zero() const { return element(std::vector<std::int64_t>(num_coords(), 0)); }
    GroupElement generator(std::size_t i) const {
        std::vector<std::int64_t> c(num_coords(), 0);
        c.at(i) = 1;
        return element(std::move(c));
    }
    bool contains(const GroupElement& x) const { return x.shape_ && *x.shape_ == *shape_; }

    GroupElement add(const GroupElement& a, const GroupElement& b) const {
        check(a);
        check(b);
        std::vector<std::int64_t> c(a.coords_);
        for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.coords_[i];
        return element(std::move(c));
    }
    GroupElement neg(const GroupElement& a) const {
        check(a);
        std::vector<std::int64_t> c(a.coords_);
        for (auto& x : c) x = -x;
        return element(std::move(c));
    }
    GroupElement sub(const GroupElement& a, const GroupElement& b) const { return add(a, neg(b)); }
    GroupElement scale(std::int64_t n, const GroupElement& a) const {
        check(a);
        std::vector<std::int64_t> c(a.coords_);
        for (std::size_t i = 0; i < c.size(); ++i) {
            auto m = modulus(i);
            c[i] = m ? detail::mod(detail::mod(n, m) * c[i], m) : n * c[i];
        }
        return element(std::move(c));
    }

    // 0 for elements of infinite order
    std::int64_t order_of(const GroupElement& a) const {
        check(a);
        std::int64_t ord = 1;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) continue;
            auto m = modulus(i);
            if (m == 0) return 0;
            std::int64_t oi = m / std::gcd(m, a[i]);
            ord = std::lcm(ord, oi);
        }
        return ord;
    }

    // --- enumeration of finite groups (mixed radix, first coordinate slowest) ---
    std::vector<GroupElement> elements() const {
        auto n = order();
        std::vector<GroupElement> out;
        out.reserve(n);
        for (std::uint64_t k = 0; k < n; ++k) out.push_back(element_at(k));
        return out;
    }
    GroupElement element_at(std::uint64_t index) const {
        std::vector<std::int64_t> c(num_coords(), 0);
        for (std::size_t i = num_coords(); i-- > 0;) {
            auto m = static_cast<std::uint64_t>(modulus(i));
            c[i] = static_cast<std::int64_t>(index % m);
            index /= m;
        }
        return element(std::move(c));
    }
    std::uint64_t index_of(const GroupElement& a) const {
        check(a);
        if (!is_finite()) throw std::domain_error("index_of in an infinite group");
        std::uint64_t idx = 0;
        for (std::size_t i = 0; i < a.size(); ++i) idx = idx * static_cast<std::uint64_t>(modulus(i)) + a[i];
        return idx;
    }

    // "ℤ^2 × ℤ_2^3 × ℤ_4"; trivial group prints as "1"
    std::string pretty() const {
        std::vector<std::string> parts;
        if (free_rank() == 1) parts.push_back("ℤ");
        if (free_rank() > 1) parts.push_back("ℤ^" + std::to_string(free_rank()));
        const auto& t = torsion();
        for (std::size_t i = 0; i < t.size();) {
            std::size_t j = i;
            while (j < t.size() && t[j] == t[i]) ++j;
            std::string s = "ℤ_" + std::to_string(t[i]);
            if (j - i > 1) s += "^" + std::to_string(j - i);
            parts.push_back(s);
            i = j;
        }
        if (parts.empty()) return "1";
        std::string out = parts[0];
        for (std::size_t i = 1; i < parts.size(); ++i) out += " × " + parts[i];
        return out;
    }

    // ASCII form "Z^2xZ2^3xZ4", used in catalog references
    std::string ascii() const {
        std::vector<std::string> parts;
        if (free_rank() == 1) parts.push_back("Z");
        if (free_rank() > 1) parts.push_back("Z^" + std::to_string(free_rank()));
        const auto& t = torsion();
        for (std::size_t i = 0; i < t.size();) {
            std::size_t j = i;
            while (j < t.size() && t[j] == t[i]) ++j;
            std::string s = "Z" + std::to_string(t[i]);
            if (j - i > 1) s += "^" + std::to_string(j - i);
            parts.push_back(s);
            i = j;
        }
        if (parts.empty()) return "1";
        std::string out = parts[0];
        for (std::size_t i = 1; i < parts.size(); ++i) out += "x" + parts[i];
        return out;
    }

    // Inverse of ascii(); also accepts "Z3xZ3" style repeated factors.
    static AbelianGroup parse(const std::string& text) {
        if (text == "1" || text.empty()) return AbelianGroup();
        int free_rank = 0;
        std::vector<std::int64_t> orders;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            auto next = text.find('x', pos);
            std::string part = text.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
            if (part.empty() || part[0] != 'Z') throw std::invalid_argument("bad group literal '" + text + "'");
            std::string body = part.substr(1);
            std::int64_t power = 1;
            if (auto caret = body.find('^'); caret != std::string::npos) {
                power = std::stoll(body.substr(caret + 1));
                body = body.substr(0, caret);
            }
            if (body.empty()) {
                free_rank += static_cast<int>(power);
            } else {
                auto m = std::stoll(body);
                for (std::int64_t i = 0; i < power; ++i) orders.push_back(m);
            }
            if (next == std::string::npos) break;
            pos = next + 1;
        }
        return from_orders(free_rank, orders);
    }

    // The group an element belongs to.
    static AbelianGroup parent_of(const GroupElement& a) {
        if (!a.shape_) throw std::invalid_argument("element without parent group");
        AbelianGroup g;
        g.shape_ = a.shape_;
        return g;
    }

private:
    void check(const GroupElement& a) const {
        if (!contains(a)) throw std::invalid_argument("group element does not belong to this group");
    }

    std::shared_ptr<const detail::GroupShape> shape_;
};

// Group law on elements of the same group.
inline GroupElement combine(const GroupElement& a, const GroupElement& b) {
    if (!a.same_parent(b)) throw std::invalid_argument("combine: elements of different groups");
    return AbelianGroup::parent_of(a).add(a, b);
}

// Homomorphism given by the images of the standard generators of the source
// (column j of the matrix is the image of generator j).
class GroupHomomorphism {
public:
    GroupHomomorphism(AbelianGroup source, AbelianGroup target, std::vector<GroupElement> images)
        : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
        if (images_.size() != source_.num_coords()) throw std::invalid_argument("wrong number of generator images");
        for (std::size_t j = 0; j < images_.size(); ++j) {
            if (!target_.contains(images_[j])) throw std::invalid_argument("image outside the target group");
            auto m = source_.modulus(j);
            if (m != 0 && !target_.scale(m, images_[j]).is_zero())
                throw std::invalid_argument("homomorphism does not respect torsion of generator " + std::to_string(j));
        }
    }

    static GroupHomomorphism identity(const AbelianGroup& g) {
        std::vector<GroupElement> im;
        for (std::size_t j = 0; j < g.num_coords(); ++j) im.push_back(g.generator(j));
        return GroupHomomorphism(g, g, std::move(im));
    }

    const AbelianGroup& source() const noexcept { return source_; }
    const AbelianGroup& target() const noexcept { return target_; }
    const std::vector<GroupElement>& images() const noexcept { return images_; }

    std::vector<std::vector<std::int64_t>> matrix() const {
        std::vector<std::vector<std::int64_t>> m(target_.num_coords(), std::vector<std::int64_t>(images_.size()));
        for (std::size_t j = 0; j < images_.size(); ++j)
            for (std::size_t i = 0; i < target_.num_coords(); ++i) m[i][j] = images_[j][i];
        return m;
    }

    GroupElement operator()(const GroupElement& x) const {
        if (!source_.contains(x)) throw std::invalid_argument("argument outside the source group");
        GroupElement y = target_.zero();
        for (std::size_t j = 0; j < x.size(); ++j)
            if (x[j] != 0) y = target_.add(y, target_.scale(x[j], images_[j]));
        return y;
    }

    // (*this) after other
    GroupHomomorphism compose(const GroupHomomorphism& other) const {
        if (!(other.target_ == source_)) throw std::invalid_argument("compose: incompatible groups");
        std::vector<GroupElement> im;
        for (auto& g : other.images_) im.push_back((*this)(g));
        return GroupHomomorphism(other.source_, target_, std::move(im));
    }

    bool is_bijective() const {
        if (!(source_ == target_) || !source_.is_finite()) return false;
        std::vector<bool> hit(source_.order(), false);
        for (auto& x : source_.elements()) {
            auto i = target_.index_of((*this)(x));
            if (hit[i]) return false;
            hit[i] = true;
        }
        return true;
    }

    friend bool operator==(const GroupHomomorphism& a, const GroupHomomorphism& b) {
        return a.source_ == b.source_ && a.target_ == b.target_ && a.images_ == b.images_;
    }

private:
    AbelianGroup source_, target_;
    std::vector<GroupElement> images_;
};

// Z^n modulo the lattice spanned by the relation rows, with the images of the
// n standard generators (labels).
struct UniversalGroup {
    AbelianGroup group;
    std::vector<GroupElement> label_images;
};

inline UniversalGroup universal_abelian_group(std::size_t num_labels,
                                              const std::vector<std::vector<std::int64_t>>& relations) {
    IntMatrix r(relations.size(), num_labels);
    for (std::size_t i = 0; i < relations.size(); ++i) {
        if (relations[i].size() != num_labels) throw std::invalid_argument("relation vector has wrong length");
        for (std::size_t j = 0; j < num_labels; ++j) r(i, j) = relations[i][j];
    }
    auto snf = smith_normal_form(r);
    // x -> x V maps the relation lattice onto the row space of D
    std::vector<std::int64_t> d(num_labels, 0);
    for (std::size_t i = 0; i < std::min(r.rows(), num_labels); ++i) d[i] = static_cast<std::int64_t>(snf.D(i, i));
    std::vector<std::size_t> free_idx, tors_idx;
    for (std::size_t i = 0; i < num_labels; ++i) {
        if (d[i] == 0) free_idx.push_back(i);
        else if (d[i] > 1) tors_idx.push_back(i);
    }
    std::vector<std::int64_t> torsion;
    for (auto i : tors_idx) torsion.push_back(d[i]);
    AbelianGroup g(static_cast<int>(free_idx.size()), torsion);
    std::vector<GroupElement> images;
    for (std::size_t j = 0; j < num_labels; ++j) {
        std::vector<std::int64_t> c;
        for (auto i : free_idx) c.push_back(static_cast<std::int64_t>(snf.V(j, i)));
        for (auto i : tors_idx) c.push_back(static_cast<std::int64_t>(snf.V(j, i) % d[i]));
        images.push_back(g.element(std::move(c)));
    }
    return {g, images};
}

// G / <gens>, together with the projection of G's standard generators.
inline UniversalGroup quotient_group(const AbelianGroup& g, const std::vector<GroupElement>& gens) {
    const std::size_t n = g.num_coords();
    std::vector<std::vector<std::int64_t>> rel;
    for (std::size_t i = 0; i < n; ++i)
        if (auto m = g.modulus(i)) {
            std::vector<std::int64_t> row(n, 0);
            row[i] = m;
            rel.push_back(row);
        }
    for (auto& x : gens) {
        if (!g.contains(x)) throw std::invalid_argument("quotient_group: generator outside the group");
        rel.push_back(x.coords());
    }
    return universal_abelian_group(n, rel);
}

// Subgroup generated by gens (finite groups), as a sorted list of element indices.
inline std::vector<std::uint64_t> generated_subgroup(const AbelianGroup& g, const std::vector<GroupElement>& gens) {
    std::vector<bool> in(g.order(), false);
    std::vector<std::uint64_t> members{g.index_of(g.zero())};
    in[members[0]] = true;
    for (auto& x : gens) {
        for (std::size_t k = 0; k < members.size(); ++k) {
            auto y = g.add(g.element_at(members[k]), x);
            auto iy = g.index_of(y);
            if (!in[iy]) {
                in[iy] = true;
                members.push_back(iy);
            }
        }
    }
    std::sort(members.begin(), members.end());
    return members;
}

struct EnumerationLimits {
    std::uint64_t max_order = 256;
};

// Partial predicate: called with the images of generators 0..i (i = images.size()-1).
using PartialImagePredicate = std::function<bool(const std::vector<GroupElement>&)>;

// All automorphisms of a finite group whose generator images pass the predicate
// at every prefix. Output is in lexicographic order of the image index tuples.
inline std::vector<GroupHomomorphism> enumerate_automorphisms(const AbelianGroup& t, const PartialImagePredicate& keep,
                                                              EnumerationLimits limits = {}) {
    if (!t.is_finite()) throw std::domain_error("automorphism enumeration needs a finite group");
    if (t.order() > limits.max_order)
        throw std::domain_error("group order " + std::to_string(t.order()) + " exceeds enumeration bound " +
                                std::to_string(limits.max_order));
    const auto elems = t.elements();
    std::vector<std::int64_t> ord;
    for (auto& x : elems) ord.push_back(t.order_of(x));
    const std::size_t n = t.num_coords();
    std::vector<GroupHomomorphism> out;
    std::vector<GroupElement> images;

    // span[i] = membership bitmap of the subgroup generated by images[0..i)
    std::vector<std::vector<bool>> span;
    std::vector<bool> base(elems.size(), false);
    base[t.index_of(t.zero())] = true;
    span.push_back(base);

    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == n) {
            out.emplace_back(t, t, images);
            return;
        }
        const auto m = t.modulus(i);
        const std::vector<bool> cur = span.back();
        for (std::size_t c = 0; c < elems.size(); ++c) {
            if (ord[c] != m) continue;
            // independence: <images, x> must have |cur| * m elements
            std::vector<bool> next(cur.size(), false);
            std::size_t count = 0;
            bool independent = true;
            for (std::size_t a = 0; a < cur.size() && independent; ++a) {
                if (!cur[a]) continue;
                GroupElement y = elems[a];
                for (std::int64_t s = 0; s < m; ++s) {
                    auto iy = t.index_of(y);
                    if (s > 0 && cur[iy]) {
                        independent = false;
                        break;
                    }
                    if (!next[iy]) {
                        next[iy] = true;
                        ++count;
                    }
                    y = t.add(y, elems[c]);
                }
            }
            if (!independent) continue;
            (void)count;
            images.push_back(elems[c]);
            if (keep(images)) {
                span.push_back(std::move(next));
                rec(i + 1);
                span.pop_back();
            }
            images.pop_back();
        }
    };
    rec(0);
    return out;
}

inline std::vector<GroupHomomorphism> automorphism_group(const AbelianGroup& t, EnumerationLimits limits = {}) {
    return enumerate_automorphisms(
        t, [](const std::vector<GroupElement>&) { return true; }, limits);
}

// Hom(T, Z_m) in normal form.
inline AbelianGroup character_group(const AbelianGroup& t, std::int64_t m) {
    if (m < 1) throw std::invalid_argument("character_group: m must be positive");
    std::vector<std::int64_t> orders;
    for (int i = 0; i < t.free_rank(); ++i) orders.push_back(m);
    for (auto ti : t.torsion()) orders.push_back(std::gcd(ti, m));
    return AbelianGroup::from_orders(0, orders);
}

struct SquareSubgroup {
    AbelianGroup subgroup;  // T^[2] = {2t}
    AbelianGroup quotient;  // T / T^[2]
    std::vector<GroupElement> elements;
};

inline SquareSubgroup square_subgroup(const AbelianGroup& t) {
    if (!t.is_finite()) throw std::domain_error("square_subgroup needs a finite group");
    std::vector<std::int64_t> sub, quo;
    for (auto m : t.torsion()) {
        sub.push_back(m / std::gcd<std::int64_t>(2, m));
        quo.push_back(std::gcd<std::int64_t>(2, m));
    }
    std::vector<GroupElement> doubled;
    for (std::size_t i = 0; i < t.num_coords(); ++i) doubled.push_back(t.scale(2, t.generator(i)));
    std::vector<GroupElement> elems;
    for (auto idx : generated_subgroup(t, doubled)) elems.push_back(t.element_at(idx));
    return {AbelianGroup::from_orders(0, sub), AbelianGroup::from_orders(0, quo), elems};
}

// Reconstructs a finite abelian group from the number of elements of each order.
inline AbelianGroup abelian_from_census(const std::map<std::int64_t, std::uint64_t>& census) {
    std::uint64_t total = 0;
    std::int64_t exponent = 1;
    for (auto& [o, c] : census) {
        total += c;
        if (c) exponent = std::lcm(exponent, o);
    }
    // n(d) = #{x : d x = 0}
    auto killed_by = [&](std::int64_t d) {
        std::uint64_t n = 0;
        for (auto& [o, c] : census)
            if (d % o == 0) n += c;
        return n;
    };
    std::vector<std::int64_t> orders;
    std::int64_t rest = exponent;
    for (std::int64_t p = 2; rest > 1; ++p) {
        if (rest % p != 0) continue;
        int top = 0;
        while (rest % p == 0) {
            rest /= p;
            ++top;
        }
        // s_k = log_p n(p^k) = sum_i min(a_i, k)
        std::vector<int> s(top + 1, 0);
        std::int64_t pk = 1;
        for (int k = 1; k <= top; ++k) {
            pk *= p;
            std::uint64_t n = killed_by(pk);
            int e = 0;
            while (n > 1) {
                if (n % static_cast<std::uint64_t>(p) != 0) throw std::invalid_argument("census is not abelian");
                n /= static_cast<std::uint64_t>(p);
                ++e;
            }
            s[k] = e;
        }
        // number of factors with exponent >= k is s_k - s_{k-1}
        for (int k = 1; k <= top; ++k) {
            int at_least_k = s[k] - s[k - 1];
            int at_least_next = k < top ? s[k + 1] - s[k] : 0;
            std::int64_t pw = 1;
            for (int r = 0; r < k; ++r) pw *= p;
            for (int r = 0; r < at_least_k - at_least_next; ++r) orders.push_back(pw);
        }
    }
    auto g = AbelianGroup::from_orders(0, orders);
    if (g.order() != total) throw std::invalid_argument("census is not that of an abelian group");
    return g;
}

}  // namespace gradecat
