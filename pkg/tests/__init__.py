# Test package for formstab
