#pragma once

#include <string>

#include "malrel/algebra.hpp"

inline malrel::FiniteAlgebra corpus(const std::string& file) {
    return malrel::load_algebra(std::string(MALREL_CORPUS_DIR) + "/" + file);
}
