#pragma once

#include "gradecat/abelian_group.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace gradecat {

// Symbolic group expression. Continuous factors are opaque leaves; finite_order()
// multiplies the finite leaves only.
class GroupDescriptor {
public:
    enum class Kind { Trivial, Abelian, Torus, Symmetric, Named, Direct, Semidirect };

    static GroupDescriptor trivial() { return GroupDescriptor(Kind::Trivial); }
    static GroupDescriptor abelian(const AbelianGroup& a) {
        if (a.is_trivial()) return trivial();
        if (!a.is_finite()) throw std::invalid_argument("descriptor leaves hold finite abelian groups only");
        GroupDescriptor d(Kind::Abelian);
        d.abelian_ = a;
        return d;
    }
    // name in {"ℝ^×", "ℂ^×", "ℍ^×", "ℂ^×/ℝ^×", "Aut(ℍ)"}
    static GroupDescriptor torus(std::string name, int power = 1) {
        if (power <= 0) return trivial();
        GroupDescriptor d(Kind::Torus);
        d.name_ = std::move(name);
        d.power_ = power;
        return d;
    }
    static GroupDescriptor symmetric(int k) {
        if (k <= 1) return trivial();
        GroupDescriptor d(Kind::Symmetric);
        d.power_ = k;
        return d;
    }
    static GroupDescriptor named(std::string tag, std::uint64_t order) {
        if (order == 1) return trivial();
        GroupDescriptor d(Kind::Named);
        d.name_ = std::move(tag);
        d.order_ = order;
        return d;
    }
    static GroupDescriptor direct(std::vector<GroupDescriptor> parts) {
        std::vector<GroupDescriptor> kept;
        for (auto& p : parts) {
            if (p.kind_ == Kind::Trivial) continue;
            if (p.kind_ == Kind::Direct) kept.insert(kept.end(), p.children_.begin(), p.children_.end());
            else kept.push_back(std::move(p));
        }
        if (kept.empty()) return trivial();
        if (kept.size() == 1) return kept[0];
        GroupDescriptor d(Kind::Direct);
        d.children_ = std::move(kept);
        return d;
    }
    // normal ⋊ acting
    static GroupDescriptor semidirect(GroupDescriptor normal, GroupDescriptor acting, std::string action = {}) {
        if (normal.kind_ == Kind::Trivial) return acting;
        if (acting.kind_ == Kind::Trivial) return normal;
        GroupDescriptor d(Kind::Semidirect);
        d.children_ = {std::move(normal), std::move(acting)};
        d.name_ = std::move(action);
        return d;
    }

    Kind kind() const noexcept { return kind_; }
    const std::vector<GroupDescriptor>& children() const noexcept { return children_; }
    const AbelianGroup& abelian_group() const noexcept { return abelian_; }
    const std::string& action() const noexcept { return name_; }

    bool is_finite() const {
        if (kind_ == Kind::Torus) return false;
        for (auto& c : children_)
            if (!c.is_finite()) return false;
        return true;
    }

    std::uint64_t finite_order() const {
        switch (kind_) {
            case Kind::Trivial: return 1;
            case Kind::Abelian: return abelian_.order();
            case Kind::Torus: return 1;
            case Kind::Symmetric: {
                std::uint64_t f = 1;
                for (int i = 2; i <= power_; ++i) f *= static_cast<std::uint64_t>(i);
                return f;
            }
            case Kind::Named: return order_;
            case Kind::Direct:
            case Kind::Semidirect: {
                std::uint64_t f = 1;
                for (auto& c : children_) f *= c.finite_order();
                return f;
            }
        }
        return 1;
    }

    std::string pretty() const {
        switch (kind_) {
            case Kind::Trivial: return "1";
            case Kind::Abelian: return abelian_.pretty();
            case Kind::Torus: return power_ == 1 ? name_ : "(" + name_ + ")^" + std::to_string(power_);
            case Kind::Symmetric: return "Sym(" + std::to_string(power_) + ")";
            case Kind::Named: return name_;
            case Kind::Direct: {
                std::string s;
                for (std::size_t i = 0; i < children_.size(); ++i) s += (i ? " × " : "") + children_[i].wrapped();
                return s;
            }
            case Kind::Semidirect: return children_[0].wrapped() + " ⋊ " + children_[1].wrapped();
        }
        return "?";
    }

    std::string sexpr() const {
        switch (kind_) {
            case Kind::Trivial: return "(1)";
            case Kind::Abelian: return "(" + abelian_.ascii() + ")";
            case Kind::Torus: return "(torus " + ascii_name() + " " + std::to_string(power_) + ")";
            case Kind::Symmetric: return "(Sym " + std::to_string(power_) + ")";
            case Kind::Named: return "(named " + ascii_name() + " " + std::to_string(order_) + ")";
            case Kind::Direct: {
                std::string s = "(x";
                for (auto& c : children_) s += " " + c.sexpr();
                return s + ")";
            }
            case Kind::Semidirect: return "(sd " + children_[0].sexpr() + " " + children_[1].sexpr() + ")";
        }
        return "(?)";
    }

    friend bool operator==(const GroupDescriptor& a, const GroupDescriptor& b) { return a.sexpr() == b.sexpr(); }

private:
    explicit GroupDescriptor(Kind k) : kind_(k) {}

    std::string wrapped() const {
        bool compound = kind_ == Kind::Direct || kind_ == Kind::Semidirect ||
                        (kind_ == Kind::Abelian && abelian_.num_coords() > 1 && pretty().find(' ') != std::string::npos);
        return compound ? "(" + pretty() + ")" : pretty();
    }
    std::string ascii_name() const {
        std::string s;
        for (char c : name_)
            if (static_cast<unsigned char>(c) < 0x80 && c != ' ') s += c;
        if (name_ == "ℝ^×") return "R*";
        if (name_ == "ℂ^×") return "C*";
        if (name_ == "ℍ^×") return "H*";
        if (name_ == "ℂ^×/ℝ^×") return "C*/R*";
        if (name_ == "Aut(ℍ)") return "Aut(H)";
        return s;
    }

    Kind kind_;
    AbelianGroup abelian_;
    std::string name_;
    int power_ = 1;
    std::uint64_t order_ = 1;
    std::vector<GroupDescriptor> children_;
};

}  // namespace gradecat
