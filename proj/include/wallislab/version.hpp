#pragma once

#define WALLISLAB_VERSION "1.0.0"
