#include "poslog/syntax.hpp"
