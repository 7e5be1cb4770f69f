#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace multiprice {

/// An (item, price) pair a customer can choose.
struct Product {
  std::size_t item = 0;
  std::size_t price_index = 0;
  std::string name;
};

/// Mean utilities of one customer type; -infinity marks a product the type
/// never chooses.
struct CustomerType {
  std::string name;
  double share = 0.0;
  std::vector<double> utilities;  // one per product
  double no_purchase = 0.0;
};

/// Multinomial logit model over a fixed product catalog.
class MnlModel {
 public:
  MnlModel() = default;
  /// Throws ValidationError on size mismatches, NaN/+inf utilities or shares
  /// that do not sum to one within 1e-12.
  MnlModel(std::vector<Product> products, std::vector<CustomerType> types);

  std::size_t product_count() const { return products_.size(); }
  std::size_t type_count() const { return types_.size(); }
  const std::vector<Product>& products() const { return products_; }
  const std::vector<CustomerType>& types() const { return types_; }
  const CustomerType& type(std::size_t a) const;

  /// exp(utility), 0 for -infinity.
  double weight(std::size_t a, std::size_t product) const {
    return weights_[a * products_.size() + product];
  }
  double no_purchase_weight(std::size_t a) const { return no_purchase_weights_[a]; }

 private:
  std::vector<Product> products_;
  std::vector<CustomerType> types_;
  std::vector<double> weights_;
  std::vector<double> no_purchase_weights_;
};

/// Product indices, sorted ascending.
using Assortment = std::vector<std::size_t>;

struct ChoiceProbs {
  std::vector<double> product;  // one entry per catalog product, 0 if not offered
  double no_purchase = 1.0;
};

/// Throws ValidationError for an unknown type or product index.
ChoiceProbs choice_probs(const MnlModel& model, std::size_t type,
                         const Assortment& offered);

enum class FamilyKind { unconstrained, one_price_per_item, explicit_list };

struct AssortmentFamily {
  FamilyKind kind = FamilyKind::unconstrained;
  std::vector<Assortment> assortments;  // explicit_list only

  static AssortmentFamily unconstrained() { return {}; }
  static AssortmentFamily one_price_per_item() {
    return {FamilyKind::one_price_per_item, {}};
  }
};

struct AssortmentChoice {
  Assortment products;
  double value = 0.0;  // sum over offered products of P(choose) * value
};

/// Expected value of offering `offered` to type a.
double assortment_value(const MnlModel& model, std::size_t type,
                        const Assortment& offered,
                        std::span<const double> values);

/// Best assortment for type a under per-product values (which may be
/// negative). `available` (one flag per product, empty = all) removes
/// products from consideration. Throws UnsupportedFamily when exact
/// enumeration would exceed 20 products.
AssortmentChoice optimize_assortment(const MnlModel& model, std::size_t type,
                                     std::span<const double> values,
                                     const AssortmentFamily& family,
                                     std::span<const char> available = {});

/// Samples a purchase by inverting the choice CDF at u in [0,1), scanning
/// products in the order of `offered`. Returns nullopt for no purchase.
std::optional<std::size_t> sample_choice(const MnlModel& model,
                                         std::size_t type,
                                         const Assortment& offered, double u);

}  // namespace multiprice
