#include "multiprice/choice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "multiprice/errors.hpp"

namespace multiprice {

namespace {

constexpr std::size_t kMaxEnumerated = 20;

double utility_weight(double u) {
  return u == -std::numeric_limits<double>::infinity() ? 0.0 : std::exp(u);
}

void check_type(const MnlModel& model, std::size_t a) {
  if (a >= model.type_count()) {
    throw ValidationError("unknown customer type " + std::to_string(a));
  }
}

bool usable(const MnlModel& model, std::size_t a, std::size_t p,
            std::span<const char> available) {
  return model.weight(a, p) > 0.0 && (available.empty() || available[p]);
}

}  // namespace

MnlModel::MnlModel(std::vector<Product> products,
                   std::vector<CustomerType> types)
    : products_(std::move(products)), types_(std::move(types)) {
  if (types_.empty()) throw ValidationError("choice model has no types");
  double share_total = 0.0;
  for (const CustomerType& t : types_) {
    if (t.utilities.size() != products_.size()) {
      throw ValidationError("type '" + t.name + "' has " +
                            std::to_string(t.utilities.size()) +
                            " utilities for " +
                            std::to_string(products_.size()) + " products");
    }
    for (double u : t.utilities) {
      if (std::isnan(u) || u == std::numeric_limits<double>::infinity()) {
        throw ValidationError("type '" + t.name + "' has an invalid utility");
      }
    }
    if (!std::isfinite(t.no_purchase)) {
      throw ValidationError("type '" + t.name +
                            "' needs a finite no-purchase utility");
    }
    if (!(t.share >= 0.0)) {
      throw ValidationError("type '" + t.name + "' has a negative share");
    }
    share_total += t.share;
  }
  if (std::abs(share_total - 1.0) > 1e-12) {
    throw ValidationError("type shares sum to " + std::to_string(share_total));
  }
  weights_.reserve(types_.size() * products_.size());
  for (const CustomerType& t : types_) {
    for (double u : t.utilities) weights_.push_back(utility_weight(u));
    no_purchase_weights_.push_back(std::exp(t.no_purchase));
  }
}

const CustomerType& MnlModel::type(std::size_t a) const {
  check_type(*this, a);
  return types_[a];
}

ChoiceProbs choice_probs(const MnlModel& model, std::size_t type,
                         const Assortment& offered) {
  check_type(model, type);
  ChoiceProbs out;
  out.product.assign(model.product_count(), 0.0);
  double total = model.no_purchase_weight(type);
  for (std::size_t p : offered) {
    if (p >= model.product_count()) {
      throw ValidationError("unknown product " + std::to_string(p));
    }
    total += model.weight(type, p);
  }
  for (std::size_t p : offered) out.product[p] = model.weight(type, p) / total;
  out.no_purchase = model.no_purchase_weight(type) / total;
  return out;
}

double assortment_value(const MnlModel& model, std::size_t type,
                        const Assortment& offered,
                        std::span<const double> values) {
  double num = 0.0;
  double den = model.no_purchase_weight(type);
  for (std::size_t p : offered) {
    const double w = model.weight(type, p);
    num += w * values[p];
    den += w;
  }
  return num / den;
}

AssortmentChoice optimize_assortment(const MnlModel& model, std::size_t type,
                                     std::span<const double> values,
                                     const AssortmentFamily& family,
                                     std::span<const char> available) {
  check_type(model, type);
  const std::size_t n = model.product_count();
  if (values.size() != n || (!available.empty() && available.size() != n)) {
    throw ValidationError("value vector does not match the product catalog");
  }
  AssortmentChoice best;

  switch (family.kind) {
    case FamilyKind::unconstrained: {
      // Under MNL some value-ordered prefix of the positive products is
      // optimal.
      std::vector<std::size_t> order;
      for (std::size_t p = 0; p < n; ++p) {
        if (usable(model, type, p, available) && values[p] > 0.0) {
          order.push_back(p);
        }
      }
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return values[a] > values[b];
      });
      double num = 0.0;
      double den = model.no_purchase_weight(type);
      std::size_t best_len = 0;
      for (std::size_t len = 1; len <= order.size(); ++len) {
        const double w = model.weight(type, order[len - 1]);
        num += w * values[order[len - 1]];
        den += w;
        if (num / den > best.value) {
          best.value = num / den;
          best_len = len;
        }
      }
      best.products.assign(order.begin(), order.begin() + best_len);
      std::sort(best.products.begin(), best.products.end());
      return best;
    }

    case FamilyKind::one_price_per_item: {
      std::vector<std::vector<std::size_t>> by_item;
      std::size_t count = 0;
      for (std::size_t p = 0; p < n; ++p) {
        if (!usable(model, type, p, available) || !(values[p] > 0.0)) continue;
        const std::size_t item = model.products()[p].item;
        if (by_item.size() <= item) by_item.resize(item + 1);
        by_item[item].push_back(p);
        ++count;
      }
      if (count > kMaxEnumerated) {
        throw UnsupportedFamily(
            "one-price-per-item enumeration limited to 20 candidate products");
      }
      std::erase_if(by_item, [](const auto& v) { return v.empty(); });
      Assortment current;
      // Depth-first over items: skip the item or offer one of its products.
      auto recurse = [&](auto&& self, std::size_t item, double num,
                         double den) -> void {
        if (item == by_item.size()) {
          if (num / den > best.value) {
            best.value = num / den;
            best.products = current;
          }
          return;
        }
        self(self, item + 1, num, den);
        for (std::size_t p : by_item[item]) {
          const double w = model.weight(type, p);
          current.push_back(p);
          self(self, item + 1, num + w * values[p], den + w);
          current.pop_back();
        }
      };
      recurse(recurse, 0, 0.0, model.no_purchase_weight(type));
      std::sort(best.products.begin(), best.products.end());
      return best;
    }

    case FamilyKind::explicit_list: {
      for (const Assortment& s : family.assortments) {
        Assortment filtered;
        for (std::size_t p : s) {
          if (p >= n) throw ValidationError("explicit assortment has unknown product");
          if (usable(model, type, p, available)) filtered.push_back(p);
        }
        std::sort(filtered.begin(), filtered.end());
        const double v = assortment_value(model, type, filtered, values);
        if (v > best.value) {
          best.value = v;
          best.products = std::move(filtered);
        }
      }
      return best;
    }
  }
  return best;
}

std::optional<std::size_t> sample_choice(const MnlModel& model,
                                         std::size_t type,
                                         const Assortment& offered, double u) {
  check_type(model, type);
  double total = model.no_purchase_weight(type);
  for (std::size_t p : offered) total += model.weight(type, p);
  const double target = u * total;
  double acc = 0.0;
  for (std::size_t p : offered) {
    const double w = model.weight(type, p);
    acc += w;
    if (w > 0.0 && target < acc) return p;
  }
  return std::nullopt;
}

}  // namespace multiprice
