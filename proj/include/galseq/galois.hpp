#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "embeddings.hpp"
#include "errors.hpp"
#include "group.hpp"
#include "lll.hpp"
#include "numberfield.hpp"

namespace galseq {

// An automorphism of Q[x]/(F) is determined by the image of the generator;
// this checks that a claimed image really is a root of F.
inline void verify_automorphism(const FieldPtr& field, const FieldElement& image) {
    FieldElement residual = elem_compose(field->modulus(), image);
    if (!residual.is_zero())
        throw not_a_root_error("verify_automorphism: image " + image.str() +
                               " is not a root of the modulus (residual " +
                               residual.str() + ")");
}

// Apply the automorphism with generator image `image` to an element.
inline FieldElement apply_automorphism(const FieldElement& image, const FieldElement& elem) {
    return elem_compose(elem.rep(), image);
}

// Image of the composition "first the automorphism with image b, then the
// one with image a".
inline FieldElement compose_automorphisms(const FieldElement& a, const FieldElement& b) {
    return apply_automorphism(a, b);
}

// Recover all automorphisms of a normal field numerically: express every
// root of the modulus as a polynomial in one fixed root, then verify those
// expressions exactly.  Precision escalates by doubling until the exact
// checks pass.  Fails with input_error when the field cannot be normal.
inline std::vector<FieldElement> discover_automorphisms(const FieldPtr& field,
                                                        unsigned long startBits = 256,
                                                        unsigned long capBits = 1048576) {
    const int d = field->degree();
    const PolyQ& f = field->modulus();
    std::string lastProblem = "no attempt made";
    for (unsigned long bits = startBits; bits <= capBits; bits *= 2) {
        EmbeddingSet emb;
        try {
            emb = embed_roots(f, bits);
        } catch (const precision_error& e) {
            lastProblem = e.what();
            continue;
        }
        std::vector<FieldElement> images;
        images.reserve(static_cast<std::size_t>(d));
        bool ok = true;
        for (int t = 0; t < d && ok; ++t) {
            auto cand = recognize_in_powers(emb, 0, static_cast<std::size_t>(t));
            if (!cand) {
                lastProblem = "no relation found at " + std::to_string(bits) + " bits";
                ok = false;
                break;
            }
            FieldElement img = field->element(*cand);
            if (!elem_compose(f, img).is_zero()) {
                lastProblem = "candidate failed exact verification at " +
                              std::to_string(bits) + " bits";
                ok = false;
                break;
            }
            images.push_back(img);
        }
        if (!ok) continue;
        // d exactly verified, pairwise distinct root expressions = the full
        // automorphism group of a normal extension.
        std::sort(images.begin(), images.end(),
                  [](const FieldElement& a, const FieldElement& b) {
                      return a.coords() < b.coords();
                  });
        bool distinct = true;
        for (std::size_t i = 1; i < images.size(); ++i)
            if (images[i] == images[i - 1]) distinct = false;
        if (!distinct) {
            lastProblem = "duplicate images at " + std::to_string(bits) + " bits";
            continue;
        }
        return images;
    }
    throw input_error(
        "discover_automorphisms: could not realize the field as normal over Q (" +
        lastProblem + "); either the field is not Galois or the precision cap is too low");
}

// A Galois number field: the ambient field together with its automorphism
// group in a fixed element order.  images[i] is the generator image of
// element i; the group table follows the same indices.
struct GaloisGroup {
    FieldPtr field;
    std::vector<FieldElement> images;
    FiniteGroup group;

    int order() const { return group.order(); }

    FieldElement apply(int i, const FieldElement& elem) const {
        return apply_automorphism(images[static_cast<std::size_t>(i)], elem);
    }
};

namespace detail {

inline std::vector<std::vector<int>> automorphism_table(const FieldPtr& field,
                                                        const std::vector<FieldElement>& images) {
    const int n = static_cast<int>(images.size());
    std::map<std::vector<Rational>, int> index;
    for (int i = 0; i < n; ++i) {
        auto key = images[static_cast<std::size_t>(i)].coords();
        if (index.count(key)) throw input_error("automorphism set contains duplicates");
        index[key] = i;
    }
    if (!index.count(field->gen().coords()))
        throw input_error("automorphism set does not contain the identity");
    std::vector<std::vector<int>> table(static_cast<std::size_t>(n),
                                        std::vector<int>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            FieldElement prod = compose_automorphisms(images[static_cast<std::size_t>(i)],
                                                      images[static_cast<std::size_t>(j)]);
            auto it = index.find(prod.coords());
            if (it == index.end())
                throw input_error("automorphism set is not closed under composition");
            table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = it->second;
        }
    return table;
}

} // namespace detail

// Assemble the Galois group from verified generator images.  The element
// order is normalized: identity first, conjugacy classes contiguous, classes
// sorted by (size, smallest member image), members sorted by image.  An
// optional override reorders whole classes afterwards; it lists one element
// index (in the normalized order) per class, and class k of the result is
// the class of the k-th listed element.
inline GaloisGroup group_close(const FieldPtr& field,
                               std::vector<FieldElement> images,
                               const std::optional<std::vector<int>>& classOrder = std::nullopt) {
    const int d = field->degree();
    if (static_cast<int>(images.size()) != d)
        throw input_error("group_close: expected " + std::to_string(d) +
                          " automorphisms, got " + std::to_string(images.size()));
    for (const auto& img : images) verify_automorphism(field, img);

    FiniteGroup provisional = FiniteGroup::from_table(detail::automorphism_table(field, images));

    // Normalized order: a permutation newIndex -> oldIndex.
    auto imageKey = [&](int oldIdx) { return images[static_cast<std::size_t>(oldIdx)].coords(); };
    std::vector<std::vector<int>> classes = provisional.conjugacy_classes();
    for (auto& cls : classes)
        std::sort(cls.begin(), cls.end(),
                  [&](int a, int b) { return imageKey(a) < imageKey(b); });
    std::sort(classes.begin(), classes.end(),
              [&](const std::vector<int>& a, const std::vector<int>& b) {
                  bool aId = provisional.class_of(provisional.identity()) ==
                             provisional.class_of(a[0]);
                  bool bId = provisional.class_of(provisional.identity()) ==
                             provisional.class_of(b[0]);
                  if (aId != bId) return aId; // identity class first
                  if (a.size() != b.size()) return a.size() < b.size();
                  return imageKey(a[0]) < imageKey(b[0]);
              });

    std::vector<int> order; // new -> old
    for (const auto& cls : classes) order.insert(order.end(), cls.begin(), cls.end());

    auto reorder = [&](const std::vector<int>& perm) {
        std::vector<FieldElement> sorted;
        sorted.reserve(perm.size());
        for (int oldIdx : perm) sorted.push_back(images[static_cast<std::size_t>(oldIdx)]);
        return sorted;
    };

    std::vector<FieldElement> sortedImages = reorder(order);
    FiniteGroup normalized =
        FiniteGroup::from_table(detail::automorphism_table(field, sortedImages));
    normalized.require_canonical();

    if (classOrder) {
        if (static_cast<int>(classOrder->size()) != normalized.class_count())
            throw input_error("group_close: class order override must list one element per class");
        std::vector<bool> used(static_cast<std::size_t>(normalized.class_count()), false);
        std::vector<int> order2;
        for (int rep : *classOrder) {
            if (rep < 0 || rep >= normalized.order())
                throw input_error("group_close: class order entry out of range");
            int c = normalized.class_of(rep);
            if (used[static_cast<std::size_t>(c)])
                throw input_error("group_close: class order override repeats a class");
            used[static_cast<std::size_t>(c)] = true;
            const auto& cls = normalized.conjugacy_classes()[static_cast<std::size_t>(c)];
            order2.insert(order2.end(), cls.begin(), cls.end());
        }
        std::vector<FieldElement> finalImages;
        finalImages.reserve(order2.size());
        for (int idx : order2) finalImages.push_back(sortedImages[static_cast<std::size_t>(idx)]);
        FiniteGroup overridden =
            FiniteGroup::from_table(detail::automorphism_table(field, finalImages));
        overridden.require_canonical();
        return GaloisGroup{field, std::move(finalImages), std::move(overridden)};
    }

    return GaloisGroup{field, std::move(sortedImages), std::move(normalized)};
}

// Search for an element whose translates under the group form a basis.
// Candidates are small integer-coefficient elements, widening gradually;
// the search is deterministic for a fixed seed.
inline FieldElement find_normal_basis_generator(const GaloisGroup& gg,
                                                std::uint64_t seed = 1,
                                                int maxTrials = 2000) {
    const int d = gg.field->degree();
    const int n = gg.order();
    std::mt19937_64 rng(seed);
    for (int trial = 0; trial < maxTrials; ++trial) {
        long range = 1 + trial / 50;
        std::vector<Rational> coeffs(static_cast<std::size_t>(d));
        for (auto& c : coeffs)
            c = Rational(Integer(static_cast<long>(rng() % (2 * range + 1)) - range));
        FieldElement xi = gg.field->element(PolyQ(std::move(coeffs)));
        if (xi.is_zero()) continue;
        // Gamma over L: entry (i, j) = (sigma_i sigma_j^{-1})(xi).
        std::vector<FieldElement> translates(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) translates[static_cast<std::size_t>(i)] = gg.apply(i, xi);
        Matrix<FieldElement> gamma(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                gamma(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
                    translates[static_cast<std::size_t>(gg.group.op(i, gg.group.inverse(j)))];
        if (!is_zero(mat_det(gamma))) return xi;
    }
    throw error("find_normal_basis_generator: no generator found within the trial budget");
}

} // namespace galseq
