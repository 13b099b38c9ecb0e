// placeholder, filled in with the report serialization
