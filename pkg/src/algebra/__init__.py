# Copyright (C) 2026 The tropdiff Authors.
# Licensed under the Apache License, Version 2.0.
# ==============================================================================
