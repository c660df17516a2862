// Copyright 2026 tfloc authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#ifndef TFLOC_VERSION_HPP
#define TFLOC_VERSION_HPP

#define TFLOC_VERSION_MAJOR 0
#define TFLOC_VERSION_MINOR 1
#define TFLOC_VERSION_PATCH 0
#define TFLOC_VERSION_STRING "0.1.0"

namespace tfloc {
inline const char* version() { return TFLOC_VERSION_STRING; }
}

#endif
